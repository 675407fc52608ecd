//! Shared fixtures for the benchmark suite.

use gentlekit_core::quiver::{parse_quiver, BoundQuiver};

pub fn kronecker() -> BoundQuiver {
    parse_quiver("vertices: 1 2 ; arrows: a: 1 -> 2, b: 1 -> 2 ; relations:").unwrap()
}

pub fn two_cycle() -> BoundQuiver {
    parse_quiver(
        "vertices: 1 2 ; arrows: al: 1 -> 1, be: 1 -> 2, ga: 2 -> 2 ; relations: al al, ga ga",
    )
    .unwrap()
}

/// A band-free zig-zag on `n` vertices: finite verdict with a full census.
pub fn zigzag(n: usize) -> BoundQuiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<String> = (1..n)
        .map(|i| {
            let (src, tgt) = if i % 2 == 0 { (i + 1, i) } else { (i, i + 1) };
            format!("a{i}: {src} -> {tgt}")
        })
        .collect();
    parse_quiver(&format!(
        "vertices: {} ; arrows: {} ; relations:",
        vertices.join(" "),
        arrows.join(", ")
    ))
    .unwrap()
}
