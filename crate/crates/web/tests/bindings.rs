use fasd_web::{decompose_json, fasd_json, generate_text};

#[test]
fn decompose_colors_every_arc() {
    let text = generate_text("degree4", 20, 3).unwrap();
    let v = decompose_json(&text).unwrap();
    let arcs = v["graph"]["arcs"].as_array().unwrap().len();
    assert_eq!(v["colors"].as_array().unwrap().len(), arcs);
    let total: u64 = v["class_sizes"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(total as usize, arcs);
}

#[test]
fn fasd_of_small_families() {
    assert_eq!(fasd_json(&generate_text("cycle", 6, 0).unwrap(), 1000).unwrap()["value"], 6);
    assert_eq!(fasd_json(&generate_text("h5", 0, 0).unwrap(), 1_000_000).unwrap()["value"], 3);
    let acyclic = "3 2\n0 1\n1 2\n";
    assert_eq!(fasd_json(acyclic, 10).unwrap()["colors"], serde_json::Value::Null);
}

#[test]
fn errors_are_messages() {
    assert!(generate_text("nope", 3, 0).unwrap_err().contains("unknown family"));
    assert!(decompose_json("2 1\n0 0\n").unwrap_err().contains("line 2"));
    let k5 = generate_text("tournament", 5, 0).unwrap();
    assert!(decompose_json(&k5).is_ok());
    let t9 = generate_text("tournament", 9, 0).unwrap();
    assert!(decompose_json(&t9).unwrap_err().contains("degree"));
}
