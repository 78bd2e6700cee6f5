#![allow(dead_code)]

use toda_ledger::{Chain, RelationDB};

pub const RELATIONS: &str = include_str!("../../../fixtures/relations.json");

pub const CHAINS: [(&str, &str); 14] = [
    ("22", include_str!("../../../fixtures/chains/22.txt")),
    ("23b", include_str!("../../../fixtures/chains/23b.txt")),
    ("47b", include_str!("../../../fixtures/chains/47b.txt")),
    ("48", include_str!("../../../fixtures/chains/48.txt")),
    ("71b", include_str!("../../../fixtures/chains/71b.txt")),
    ("72", include_str!("../../../fixtures/chains/72.txt")),
    ("73", include_str!("../../../fixtures/chains/73.txt")),
    ("119b", include_str!("../../../fixtures/chains/119b.txt")),
    ("120", include_str!("../../../fixtures/chains/120.txt")),
    ("143", include_str!("../../../fixtures/chains/143.txt")),
    ("144", include_str!("../../../fixtures/chains/144.txt")),
    ("145", include_str!("../../../fixtures/chains/145.txt")),
    ("167", include_str!("../../../fixtures/chains/167.txt")),
    ("169", include_str!("../../../fixtures/chains/169.txt")),
];

pub fn db() -> RelationDB {
    RelationDB::from_json(RELATIONS).unwrap()
}

pub fn chain(id: &str) -> Chain {
    let (_, text) = CHAINS.iter().find(|(k, _)| *k == id).unwrap();
    Chain::parse(text).unwrap()
}
