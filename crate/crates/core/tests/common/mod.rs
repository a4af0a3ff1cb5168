#![allow(dead_code)]

use std::path::Path;

use treeshell::{CapacityTree, Labelling};

pub fn read(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

pub fn tree(name: &str) -> CapacityTree {
    CapacityTree::parse(&read(&format!("{name}.ctree"))).unwrap()
}

pub fn star(center: u32, leaves: usize) -> CapacityTree {
    let mut text = format!("node c parent=- cap={center}\n");
    for i in 0..leaves {
        text.push_str(&format!("node l{i} parent=c cap=1\n"));
    }
    CapacityTree::parse(&text).unwrap()
}

/// A labelling from one label list per vertex in preorder.
pub fn lab(t: &CapacityTree, slots: &[&[u32]]) -> Labelling {
    Labelling::new(t, slots.iter().map(|s| s.to_vec()).collect()).unwrap()
}
