//! Bundled scenario fixtures: the standard case plus the three
//! showcase cases demonstrating where performance metrics and the
//! safety metric diverge.

pub const CS: &str = include_str!("../fixtures/cs.scenario.json");
pub const C1: &str = include_str!("../fixtures/c1.scenario.json");
pub const C2: &str = include_str!("../fixtures/c2.scenario.json");
pub const C3: &str = include_str!("../fixtures/c3.scenario.json");

pub fn all() -> [(&'static str, &'static str); 4] {
    [("C_S", CS), ("C_1", C1), ("C_2", C2), ("C_3", C3)]
}
