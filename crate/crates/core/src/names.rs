//! Canonical identifier encodings for constructed entities.
//!
//! Every construction names what it builds deterministically from the names
//! of its inputs, so round-trip witnesses are plain renamings.

pub fn pair(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

pub fn triple(a: &str, b: &str, c: &str) -> String {
    format!("({a},{b},{c})")
}

pub fn inl(a: &str) -> String {
    format!("inl({a})")
}

pub fn inr(a: &str) -> String {
    format!("inr({a})")
}

pub fn id_of(obj: &str) -> String {
    format!("id[{obj}]")
}

pub fn tuple(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}
