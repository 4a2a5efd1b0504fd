#![allow(dead_code)]

use std::sync::Arc;

use mvam_core::{Element, Lattice, LatticeSpec, Matrix, PatternFamily, PatternPair};

pub const TRAINING_PAIRS: [([&str; 4], [&str; 2]); 8] = [
    (["ab", "a", "a", "cd"], ["ac", "1"]),
    (["bc", "bc", "c", "bcd"], ["bcd", "bc"]),
    (["abc", "c", "c", "c"], ["abc", "c"]),
    (["b", "bd", "0", "bc"], ["1", "bc"]),
    (["a", "ac", "a", "acd"], ["acd", "cd"]),
    (["ac", "ac", "b", "bc"], ["c", "abc"]),
    (["c", "bd", "d", "d"], ["bc", "cd"]),
    (["d", "ad", "d", "ac"], ["cd", "acd"]),
];

/// Weights by output column: `W⁰ᵀ`.
pub const W0_TRANSPOSED: [[&str; 4]; 2] = [["cd", "bc", "ac", "c"], ["cd", "c", "bcd", "bc"]];

pub fn four_generators() -> Arc<Lattice> {
    Arc::new(Lattice::powerset(["a", "b", "c", "d"]).unwrap())
}

pub fn parse_all(l: &Lattice, names: &[&str]) -> Vec<Element> {
    names.iter().map(|s| l.parse(s).unwrap()).collect()
}

pub fn names_of(l: &Lattice, values: &[Element]) -> Vec<String> {
    values.iter().map(|&e| l.name(e).unwrap()).collect()
}

pub fn training_family(l: &Arc<Lattice>) -> PatternFamily {
    PatternFamily::new(
        l.clone(),
        TRAINING_PAIRS
            .iter()
            .map(|(x, y)| PatternPair::new(parse_all(l, x), parse_all(l, y)))
            .collect(),
    )
    .unwrap()
}

pub fn transposed_names(l: &Lattice, m: &Matrix<Element>) -> Vec<Vec<String>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| l.name(m[(i, j)]).unwrap()).collect())
        .collect()
}

pub fn divisors12() -> Arc<Lattice> {
    Arc::new(
        Lattice::build(&LatticeSpec::general(
            ["d1", "d2", "d3", "d4", "d6", "d12"],
            [
                ("d1", "d2"),
                ("d1", "d3"),
                ("d2", "d4"),
                ("d2", "d6"),
                ("d3", "d6"),
                ("d4", "d12"),
                ("d6", "d12"),
            ],
        ))
        .unwrap(),
    )
}

/// Divisor value of a `divisors12()` element.
pub fn divisor_value(e: Element) -> u32 {
    [1, 2, 3, 4, 6, 12][e.index() as usize]
}

pub fn powerset_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// The powerset on `k` generators written out as a Hasse diagram, so it is
/// built through the general-mode path. Element `mask` gets name `s<mask>`.
pub fn powerset_as_general(k: usize) -> Arc<Lattice> {
    let size = 1u32 << k;
    let elements: Vec<String> = (0..size).map(|m| format!("s{m}")).collect();
    let mut covers = Vec::new();
    for m in 0..size {
        for bit in 0..k {
            if m >> bit & 1 == 0 {
                covers.push((format!("s{m}"), format!("s{}", m | 1 << bit)));
            }
        }
    }
    Arc::new(Lattice::build(&LatticeSpec::general(elements, covers)).unwrap())
}

pub fn chain(len: usize) -> Arc<Lattice> {
    let elements: Vec<String> = (0..len).map(|i| format!("t{i}")).collect();
    let covers: Vec<(String, String)> = (1..len)
        .map(|i| (format!("t{}", i - 1), format!("t{i}")))
        .collect();
    Arc::new(Lattice::build(&LatticeSpec::general(elements, covers)).unwrap())
}

/// Every small lattice the law suites run on.
pub fn test_lattices() -> Vec<(String, Arc<Lattice>)> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push((
            format!("powerset-{k}"),
            Arc::new(Lattice::powerset(powerset_names(k)).unwrap()),
        ));
    }
    for k in 1..=4 {
        out.push((format!("general-powerset-{k}"), powerset_as_general(k)));
    }
    out.push(("divisors-12".into(), divisors12()));
    out.push(("chain-5".into(), chain(5)));
    out
}
