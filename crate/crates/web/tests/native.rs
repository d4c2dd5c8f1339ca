use hilbtaut_web::{chi_table_text, reps_series_text, toeplitz_det_text};

#[test]
fn chi_table_rows() {
    let t = chi_table_text("p2", 4, 3, "2", "0").unwrap();
    let rows: Vec<&str> = t.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[2], "3\t56");
    assert!(chi_table_text("p2", 3, 5, "2", "0").is_err());
    assert!(chi_table_text("nowhere", 1, 1, "1", "0").is_err());
}

#[test]
fn toeplitz_and_reps() {
    assert_eq!(toeplitz_det_text(true, 1, 3).unwrap(), "4");
    assert_eq!(reps_series_text(3, false).unwrap(), "3 t^2");
    assert_eq!(reps_series_text(3, true).unwrap(), "3 t^2 + 6 t^3 + 3 t^4");
}
