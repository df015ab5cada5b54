//! Shared helpers: a small notation for local monodromies written in terms of
//! two symbolic characters `p` (φ) and `e` (η).
//!
//! `cell  := term (" + " term)*`
//! `term  := block [" x" mult]`
//! `block := ["-"] "U(" n ["," chr] ")" | chr`
//! `chr   := ["-"] factor ("*" factor)*`, `factor := ("1" | "p" | "e") ["^" int]`
//!
//! A leading `-` multiplies by the quadratic character; a bare character is a
//! block of size one.

#![allow(dead_code)]

use g2rigid::{Character, LocalMonodromy};

pub fn c(num: i64, den: u64) -> Character {
    Character::new(num, den)
}

fn chr(s: &str, p: Character, e: Character) -> Character {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let mut acc = if neg {
        Character::QUADRATIC
    } else {
        Character::TRIVIAL
    };
    for f in body.split('*') {
        let (base, exp) = match f.split_once('^') {
            Some((b, k)) => (b, k.parse::<i64>().expect("exponent")),
            None => (f, 1),
        };
        let b = match base {
            "1" => Character::TRIVIAL,
            "p" => p,
            "e" => e,
            other => panic!("unknown character symbol {other:?}"),
        };
        acc = acc.mul(b.pow(exp));
    }
    acc
}

fn block(s: &str, p: Character, e: Character) -> (Character, u32) {
    let (neg, body) = match s.strip_prefix("-U(") {
        Some(rest) => (true, format!("U({rest}")),
        None => (false, s.to_string()),
    };
    let sign = if neg {
        Character::QUADRATIC
    } else {
        Character::TRIVIAL
    };
    if let Some(inner) = body.strip_prefix("U(").and_then(|r| r.strip_suffix(')')) {
        let (n, ch) = match inner.split_once(',') {
            Some((n, ch)) => (n, chr(ch, p, e)),
            None => (inner, Character::TRIVIAL),
        };
        (ch.mul(sign), n.parse().expect("block size"))
    } else {
        (chr(&body, p, e), 1)
    }
}

pub fn cell(s: &str, p: Character, e: Character) -> LocalMonodromy {
    let mut blocks = Vec::new();
    for term in s.split(" + ") {
        let (b, mult) = match term.split_once(" x") {
            Some((b, m)) => (b, m.parse::<usize>().expect("multiplicity")),
            None => (term, 1),
        };
        let blk = block(b.trim(), p, e);
        blocks.extend(std::iter::repeat_n(blk, mult));
    }
    LocalMonodromy::from_blocks(blocks).expect("nonempty cell")
}

/// The seven rows `H₀..H₆` at `α₁`, `α₂`, `∞`.
pub type Table = [[&'static str; 3]; 7];

pub const CASE1: Table = [
    ["-1", "-1", "1"],
    ["U(2)", "-U(2)", "U(2)"],
    ["-1 x2 + 1", "U(3)", "U(3)"],
    ["U(2) x2", "U(2) + -1 x2", "U(4)"],
    ["1 x2 + -1 x3", "U(2) x2 + -1", "U(5)"],
    ["U(2) x3", "-U(2) + -1 x2 + 1 x2", "U(6)"],
    ["-1 x4 + 1 x3", "U(2) x2 + U(3)", "U(7)"],
];

pub const CASE2: Table = [
    ["-1", "-p^-1", "p^-1"],
    ["U(2)", "-p + -p^-1", "p + p^-1"],
    ["-1 x2 + 1", "p + p^-1 + 1", "p + p^-1 + 1"],
    [
        "U(1,p) x2 + 1 x2",
        "p^-1 + 1 + U(1,-1) x2",
        "U(2,p) + 1 + p^-1",
    ],
    [
        "1 x2 + -1 x3",
        "-p + U(1,p^-1) x2 + 1 x2",
        "U(2) + U(2,p^-1) + p",
    ],
    [
        "U(1,p^-1) x3 + 1 x3",
        "U(2,-p) + 1 x2 + U(1,-p) x2",
        "U(3,p) + U(2) + p^-1",
    ],
    ["-1 x4 + 1 x3", "U(2) x2 + U(3)", "U(3,p) + U(3,p^-1) + 1"],
];

pub const CASE3: Table = [
    ["-1", "-p^2", "p^2"],
    ["p^-3 + 1", "-p^-2 + -p^-1", "p^-4 + p^-2"],
    ["-1 x2 + 1", "p + p^2 + 1", "p^3 + p^-1 + p"],
    [
        "U(1,p^-1) x2 + 1 x2",
        "p^-1 + 1 + U(1,-1) x2",
        "p^-2 + p + p^-3 + p^-1",
    ],
    [
        "1 x2 + -1 x3",
        "-p + U(1,p) x2 + 1 x2",
        "p^2 + 1 + p^3 + p^-1 + p",
    ],
    [
        "U(1,p^-1) x3 + 1 x3",
        "U(2,-p^-1) + 1 x2 + U(1,-p^-1) x2",
        "1 + U(2,p^-2) + p + p^-3 + p^-1",
    ],
    [
        "-1 x4 + 1 x3",
        "U(2) x2 + U(3)",
        "U(2,p) + U(2,p^-1) + p^2 + p^-2 + 1",
    ],
];

pub const CASE4: Table = [
    ["-1", "-1", "1"],
    ["p + 1", "-1 + -p^-1", "U(2)"],
    ["-1 x2 + 1", "p^-1 + p^-2 + 1", "U(3,p^-1)"],
    ["U(2) x2", "p + 1 + U(1,-p) x2", "p^2 + U(3,p)"],
    ["1 x2 + -1 x3", "-p + U(1,p) x2 + 1 x2", "p^2 + 1 + U(3,p)"],
    [
        "U(1,p^-1) x3 + 1 x3",
        "U(2,-p^-1) + 1 x2 + U(1,-p^-1) x2",
        "1 + U(2,p^-2) + U(3,p^-1)",
    ],
    [
        "-1 x4 + 1 x3",
        "U(2) x2 + U(3)",
        "U(2,p) + U(2,p^-1) + U(3)",
    ],
];

pub const CASE5: Table = [
    ["-1", "-p*e", "p*e"],
    [
        "p^-1*e^-2 + 1",
        "-p^-1*e^-1 + -p^-1",
        "p^-1*e^-1 + p^-2*e^-2",
    ],
    ["1 + -1 x2", "e + e^2 + 1", "e + p^-1 + p*e^2"],
    [
        "U(1,p^-1*e^-1) x2 + 1 x2",
        "-e^-1 + 1 + U(1,-p*e^-1) x2",
        "e^-1 + p^-1*e^-2 + p + e^-2",
    ],
    [
        "U(1,-1) x3 + 1 x2",
        "-p + U(1,p) x2 + 1 x2",
        "p + e^-1 + p^2*e + p*e^-1 + p*e",
    ],
    [
        "U(1,p^-1) x3 + 1 x3",
        "U(2,-p^-1) + U(1,-p^-1) x2 + 1 x2",
        "p^-1 + e^-1*p^-2 + e + p^-1*e^-1 + p^-1*e + p^-2",
    ],
    [
        "-1 x4 + 1 x3",
        "U(2) x2 + U(3)",
        "1 + e^-1*p^-1 + e*p + e^-1 + e + p^-1 + p",
    ],
];

/// Jordan form, `G₂` and `GL₇` centralizer dimensions, and parameter samples
/// `(x, y)` satisfying the row's condition.
pub struct Row {
    pub id: u8,
    pub form: &'static str,
    pub dim_g2: u64,
    pub dim_gl7: u32,
    pub samples: &'static [(i64, u64, i64, u64)],
}

pub const NONE: &[(i64, u64, i64, u64)] = &[(0, 1, 0, 1)];

pub const TABLE1: [Row; 20] = [
    Row {
        id: 1,
        form: "1 x7",
        dim_g2: 14,
        dim_gl7: 49,
        samples: NONE,
    },
    Row {
        id: 2,
        form: "U(2) x2 + 1 x3",
        dim_g2: 8,
        dim_gl7: 29,
        samples: NONE,
    },
    Row {
        id: 3,
        form: "U(3) + U(2) x2",
        dim_g2: 6,
        dim_gl7: 19,
        samples: NONE,
    },
    Row {
        id: 4,
        form: "U(3) x2 + 1",
        dim_g2: 4,
        dim_gl7: 17,
        samples: NONE,
    },
    Row {
        id: 5,
        form: "U(7)",
        dim_g2: 2,
        dim_gl7: 7,
        samples: NONE,
    },
    Row {
        id: 6,
        form: "-1 x4 + 1 x3",
        dim_g2: 6,
        dim_gl7: 25,
        samples: NONE,
    },
    Row {
        id: 7,
        form: "-U(2) x2 + 1 x3",
        dim_g2: 4,
        dim_gl7: 17,
        samples: NONE,
    },
    Row {
        id: 8,
        form: "-U(2) x2 + U(3)",
        dim_g2: 4,
        dim_gl7: 11,
        samples: NONE,
    },
    Row {
        id: 9,
        form: "-U(3) + -1 + U(3)",
        dim_g2: 2,
        dim_gl7: 9,
        samples: NONE,
    },
    Row {
        id: 10,
        form: "p x3 + 1 + p^-1 x3",
        dim_g2: 8,
        dim_gl7: 19,
        samples: &[(1, 3, 0, 1)],
    },
    Row {
        id: 11,
        form: "U(2,p) + U(2,p^-1) + p + p^-1 + 1",
        dim_g2: 4,
        dim_gl7: 11,
        samples: &[(1, 3, 0, 1)],
    },
    Row {
        id: 12,
        form: "U(3,p) + U(3,p^-1) + 1",
        dim_g2: 2,
        dim_gl7: 7,
        samples: &[(1, 3, 0, 1)],
    },
    Row {
        id: 13,
        form: "p x2 + -1 x2 + 1 + p^-1 x2",
        dim_g2: 4,
        dim_gl7: 13,
        samples: &[(1, 4, 0, 1)],
    },
    Row {
        id: 14,
        form: "U(2,p) + U(2,p^-1) + -1 x2 + 1",
        dim_g2: 2,
        dim_gl7: 9,
        samples: &[(1, 4, 0, 1)],
    },
    Row {
        id: 15,
        form: "p x2 + p^-1 x2 + 1 x3",
        dim_g2: 4,
        dim_gl7: 17,
        samples: &[(1, 3, 0, 1), (1, 4, 0, 1), (2, 5, 0, 1), (3, 8, 0, 1)],
    },
    Row {
        id: 16,
        form: "p x2 + p^2 + 1 + p^-1 x2 + p^-2",
        dim_g2: 4,
        dim_gl7: 11,
        samples: &[(1, 5, 0, 1), (1, 6, 0, 1), (3, 7, 0, 1), (1, 8, 0, 1)],
    },
    Row {
        id: 17,
        form: "p + -1 x2 + -p + 1 + -p^-1 + p^-1",
        dim_g2: 2,
        dim_gl7: 9,
        samples: &[(1, 3, 0, 1), (1, 5, 0, 1), (1, 6, 0, 1), (1, 8, 0, 1)],
    },
    Row {
        id: 18,
        form: "U(2,p) + U(2,p^-1) + p^2 + p^-2 + 1",
        dim_g2: 2,
        dim_gl7: 7,
        samples: &[(1, 5, 0, 1), (1, 6, 0, 1), (1, 8, 0, 1), (2, 9, 0, 1)],
    },
    Row {
        id: 19,
        form: "U(2,p) + U(2,p^-1) + U(3)",
        dim_g2: 2,
        dim_gl7: 7,
        samples: &[(1, 3, 0, 1), (1, 4, 0, 1), (1, 5, 0, 1)],
    },
    Row {
        id: 20,
        form: "p + e + p*e + 1 + p^-1*e^-1 + e^-1 + p^-1",
        dim_g2: 2,
        dim_gl7: 7,
        samples: &[(1, 7, 2, 7), (1, 8, 1, 4), (1, 12, 1, 3), (1, 9, 1, 3)],
    },
];

/// Cells of the Case tables whose row, as printed, violates the determinant
/// condition; indexed by case, entries are `(row, column)`.
pub const ERRATA: [&[(usize, usize)]; 5] = [
    &[],
    &[(5, 1)],
    &[(3, 0), (4, 1)],
    &[(3, 1), (4, 1)],
    &[(3, 1), (4, 1)],
];

/// The Case tables with one instantiation each.
pub fn cases() -> [(&'static Table, Character, Character); 5] {
    [
        (&CASE1, c(0, 1), c(0, 1)),
        (&CASE2, c(1, 3), c(1, 3)),
        (&CASE3, c(1, 5), c(1, 5)),
        (&CASE4, c(1, 5), c(4, 5)),
        (&CASE5, c(1, 7), c(2, 7)),
    ]
}
