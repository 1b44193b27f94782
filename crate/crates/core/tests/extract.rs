use std::fs;
use std::path::Path;

use atdi::depgraph::{extract_lexical_dependencies, ExtractorConfig, GraphError, Level};

fn put(root: &Path, rel: &str, text: &str) {
    let path = root.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, text).unwrap();
}

#[test]
fn lines_mentioning_a_type_become_weighted_edges() {
    let tmp = tempfile::tempdir().unwrap();
    put(tmp.path(), "app/ui/View.java", "class View {\n  Model m;\n\n  // Model in a comment\n  Model load() { return new Model(); }\n}\n");
    put(tmp.path(), "app/core/Model.java", "class Model {\n  int x;\n}\n");
    put(tmp.path(), "app/core/notes.txt", "View View View\n");

    let g = extract_lexical_dependencies(tmp.path(), &ExtractorConfig::default()).unwrap();
    let view = g.lookup("app.ui.View").unwrap();
    let model = g.lookup("app.core.Model").unwrap();
    assert_eq!(g.entities_at(Level::Class).count(), 2);
    // two code lines mention Model, the comment does not count
    assert_eq!(g.weight(view, model), Some(2));
    assert_eq!(g.weight(model, view), None);
    // blank and comment-only lines are not LOC
    assert_eq!(g.entity(view).loc, 4);
    assert_eq!(g.entity(model).loc, 3);
    let (ui, core) = (g.lookup("app.ui").unwrap(), g.lookup("app.core").unwrap());
    assert_eq!(g.weight(ui, core), Some(2));
}

#[test]
fn extensions_are_configurable() {
    let tmp = tempfile::tempdir().unwrap();
    put(tmp.path(), "p/A.kt", "B()\n");
    put(tmp.path(), "p/B.kt", "\n");
    let java_only = ExtractorConfig { extensions: vec!["java".into()], ..ExtractorConfig::default() };
    assert!(extract_lexical_dependencies(tmp.path(), &java_only).unwrap().is_empty());
    let g = extract_lexical_dependencies(tmp.path(), &ExtractorConfig::default()).unwrap();
    assert_eq!(g.weight(g.lookup("p.A").unwrap(), g.lookup("p.B").unwrap()), Some(1));
}

#[test]
fn same_qualified_name_twice_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    put(tmp.path(), "p/A.java", "class A {}\n");
    put(tmp.path(), "p/A.kt", "class A {}\n");
    let cfg = ExtractorConfig { extensions: vec!["java".into(), "kt".into()], ..ExtractorConfig::default() };
    assert!(matches!(extract_lexical_dependencies(tmp.path(), &cfg), Err(GraphError::NameCollision { .. })));
}

#[test]
fn missing_root_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let err = extract_lexical_dependencies(&tmp.path().join("nope"), &ExtractorConfig::default()).unwrap_err();
    assert!(matches!(err, GraphError::Io { .. }));
}
