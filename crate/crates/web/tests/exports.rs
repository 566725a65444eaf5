use divlab_web::{bound_curve_json, cocycle_grid_json, density_curve_json};
use serde_json::Value;

#[test]
fn bound_rows_increase_in_m() {
    let v: Value = serde_json::from_str(&bound_curve_json("-171", "810", 12).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["m"], 3);
    let b: Vec<f64> = rows.iter().map(|r| r["log10_b"].as_f64().unwrap()).collect();
    assert!(b.windows(2).all(|w| w[0] < w[1]));
    assert!(bound_curve_json("-171", "810", 2).is_err());
    assert!(bound_curve_json("0", "0", 5).is_err());
}

#[test]
fn density_curve_ends_at_sweep_density() {
    let v: Value =
        serde_json::from_str(&density_curve_json("-171", "810", "10", "10", 4, 1000, Some(16)).unwrap()).unwrap();
    assert_eq!(v["solvable"], 123);
    assert_eq!(v["unsolvable"], 45);
    assert_eq!(v["threshold"].as_f64(), Some(0.0625));
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 168);
    assert_eq!(points[0][0], 2);
    assert_eq!(points[0][1].as_f64(), Some(1.0));
    assert!((points[167][1].as_f64().unwrap() - 45.0 / 168.0).abs() < 1e-12);
    assert!(density_curve_json("-171", "810", "2", "4", 4, 100, None).is_err());
}

#[test]
fn grid_for_two_w() {
    let v: Value = serde_json::from_str(&cocycle_grid_json(&[0, 0, 0, 2], &[0, 0, 0, 0]).unwrap()).unwrap();
    assert_eq!(v["failing"], 4);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let failing: Vec<&Value> = rows.iter().filter(|r| r["local"] == false).map(|r| &r["params"]).collect();
    let expected: Vec<Value> =
        [[0, 0, 1, 1], [0, 1, 0, 1], [1, 0, 0, 1], [1, 0, 1, 1]].iter().map(|p| serde_json::json!(p)).collect();
    assert_eq!(failing, expected.iter().collect::<Vec<_>>());
    for r in rows {
        let z = &r["z"];
        let in_image = r["image"].as_array().unwrap().contains(z);
        assert_eq!(in_image, r["local"] == true);
    }
}

#[test]
fn grid_rejects_non_cocycles() {
    let err = cocycle_grid_json(&[1, 0, 0, 0], &[0, 0, 0, 0]).unwrap_err();
    assert!(err.contains("not a cocycle"), "{err}");
    assert!(cocycle_grid_json(&[1, 0, 0], &[0, 0, 0, 0]).is_err());
    let v: Value = serde_json::from_str(&cocycle_grid_json(&[2, 0, 0, 0], &[0, 0, 0, 0]).unwrap()).unwrap();
    assert_eq!(v["failing"], 2);
}
