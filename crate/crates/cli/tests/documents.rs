use std::path::PathBuf;

use cocycle_cli::document::Document;

#[test]
fn every_sample_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = Document::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(doc.to_canonical(), text, "{}", path.display());
        assert_eq!(Document::parse(&doc.to_canonical()).unwrap(), doc);
        seen += 1;
    }
    assert!(seen >= 5);
}
