use std::fmt::Write;

use super::category::{FinCat, Mor};

/// Graphviz rendering of the non-identity morphisms of a category. `style`
/// may attach extra edge attributes to individual morphisms.
pub fn to_dot(cat: &FinCat, title: &str, style: impl Fn(Mor) -> Option<String>) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(title)).unwrap();
    for o in cat.objects() {
        writeln!(s, "  {};", quote(cat.obj_name(o))).unwrap();
    }
    for m in cat.morphisms().filter(|&m| !cat.is_identity(m)) {
        let extra = style(m).map(|e| format!(", {e}")).unwrap_or_default();
        writeln!(
            s,
            "  {} -> {} [label={}{}];",
            quote(cat.obj_name(cat.src(m))),
            quote(cat.obj_name(cat.tgt(m))),
            quote(cat.mor_name(m)),
            extra
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
