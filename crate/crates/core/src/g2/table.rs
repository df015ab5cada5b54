//! The `GL₇` Jordan forms of elements of `G₂` with their centralizer
//! dimensions, stored as templates over the parameters `x` and `y`.
//!
//! Rows written with a primitive third root `ε` or fourth root `i` use the
//! parameter `x` with an order condition.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::local::LocalMonodromy;

/// Eigen-character `(-1)^neg · x^px · y^py`.
#[derive(Debug, Clone, Copy)]
pub struct Eig {
    pub neg: bool,
    pub px: i8,
    pub py: i8,
}

const fn ev(neg: bool, px: i8, py: i8) -> Eig {
    Eig { neg, px, py }
}

const ONE: Eig = ev(false, 0, 0);
const MINUS: Eig = ev(true, 0, 0);
const X: Eig = ev(false, 1, 0);
const XI: Eig = ev(false, -1, 0);
const X2: Eig = ev(false, 2, 0);
const X2I: Eig = ev(false, -2, 0);

impl Eig {
    fn eval(self, x: Character, y: Character) -> Character {
        let base = x.pow(i64::from(self.px)).mul(y.pow(i64::from(self.py)));
        if self.neg {
            base.neg()
        } else {
            base
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    None,
    /// `x` has exactly this order.
    Order(u64),
    /// `x² ≠ 1`.
    SquareNotOne,
    /// `x⁴ ≠ 1`.
    FourthNotOne,
    /// `x⁴ ≠ 1 ≠ x³`.
    FourthAndCubeNotOne,
    /// `x, y, xy, 1, (xy)⁻¹, y⁻¹, x⁻¹` pairwise different.
    PairwiseDistinct,
}

impl Condition {
    pub fn holds(self, x: Character, y: Character) -> bool {
        let not_one = |k: i64| !x.pow(k).is_trivial();
        match self {
            Condition::None => true,
            Condition::Order(n) => x.order() == n,
            Condition::SquareNotOne => not_one(2),
            Condition::FourthNotOne => not_one(4),
            Condition::FourthAndCubeNotOne => not_one(4) && not_one(3),
            Condition::PairwiseDistinct => {
                let xy = x.mul(y);
                let v = [x, y, xy, Character::TRIVIAL, xy.inv(), y.inv(), x.inv()];
                let set: std::collections::BTreeSet<_> = v.iter().collect();
                set.len() == 7
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Template {
    pub id: u8,
    pub name: &'static str,
    pub blocks: &'static [(Eig, u32)],
    pub dim_g2: u32,
    pub dim_gl7: u32,
    /// Number of parameters used: 0, 1 (`x`) or 2 (`x`, `y`).
    pub params: u8,
    pub condition: Condition,
}

impl Template {
    /// The Jordan form with the given parameters; `None` if the row's
    /// condition fails.
    pub fn instantiate(&self, x: Character, y: Character) -> Option<LocalMonodromy> {
        let (x, y) = match self.params {
            0 => (Character::TRIVIAL, Character::TRIVIAL),
            1 => (x, Character::TRIVIAL),
            _ => (x, y),
        };
        if !self.condition.holds(x, y) {
            return None;
        }
        // a degenerate parameter can merge eigenvalues into another row's class
        LocalMonodromy::from_blocks(self.blocks.iter().map(|&(e, n)| (e.eval(x, y), n)))
            .filter(|m| m.centralizer_dim_gl() == self.dim_gl7)
    }
}

macro_rules! row {
    ($id:expr, $name:expr, [$($e:expr ; $n:expr),* $(,)?], $g2:expr, $gl:expr, $p:expr, $cond:expr) => {
        Template {
            id: $id,
            name: $name,
            blocks: &[$(($e, $n)),*],
            dim_g2: $g2,
            dim_gl7: $gl,
            params: $p,
            condition: $cond,
        }
    };
}

pub static TABLE: [Template; 20] = [
    row!(1, "E_7", [ONE;1, ONE;1, ONE;1, ONE;1, ONE;1, ONE;1, ONE;1], 14, 49, 0, Condition::None),
    row!(2, "(J(2),J(2),E_3)", [ONE;2, ONE;2, ONE;1, ONE;1, ONE;1], 8, 29, 0, Condition::None),
    row!(3, "(J(3),J(2),J(2))", [ONE;3, ONE;2, ONE;2], 6, 19, 0, Condition::None),
    row!(4, "(J(3),J(3),1)", [ONE;3, ONE;3, ONE;1], 4, 17, 0, Condition::None),
    row!(5, "J(7)", [ONE; 7], 2, 7, 0, Condition::None),
    row!(6, "(-E_4,E_3)", [MINUS;1, MINUS;1, MINUS;1, MINUS;1, ONE;1, ONE;1, ONE;1], 6, 25, 0, Condition::None),
    row!(7, "(-J(2),-J(2),E_3)", [MINUS;2, MINUS;2, ONE;1, ONE;1, ONE;1], 4, 17, 0, Condition::None),
    row!(8, "(-J(2),-J(2),J(3))", [MINUS;2, MINUS;2, ONE;3], 4, 11, 0, Condition::None),
    row!(9, "(-J(3),-1,J(3))", [MINUS;3, MINUS;1, ONE;3], 2, 9, 0, Condition::None),
    row!(10, "(eE_3,1,e^-1E_3)", [X;1, X;1, X;1, ONE;1, XI;1, XI;1, XI;1], 8, 19, 1, Condition::Order(3)),
    row!(11, "(eJ(2),e^-1J(2),e,e^-1,1)", [X;2, XI;2, X;1, XI;1, ONE;1], 4, 11, 1, Condition::Order(3)),
    row!(12, "(eJ(3),e^-1J(3),1)", [X;3, XI;3, ONE;1], 2, 7, 1, Condition::Order(3)),
    row!(13, "(i,i,-1,1,i^-1,i^-1,-1)", [X;1, X;1, MINUS;1, ONE;1, XI;1, XI;1, MINUS;1], 4, 13, 1, Condition::Order(4)),
    row!(14, "(iJ(2),i^-1J(2),-1,-1,1)", [X;2, XI;2, MINUS;1, MINUS;1, ONE;1], 2, 9, 1, Condition::Order(4)),
    row!(15, "(x,x,x^-1,x^-1,1,1,1)", [X;1, X;1, XI;1, XI;1, ONE;1, ONE;1, ONE;1], 4, 17, 1, Condition::SquareNotOne),
    row!(16, "(x,x,x^2,1,x^-1,x^-1,x^-2)", [X;1, X;1, X2;1, ONE;1, XI;1, XI;1, X2I;1], 4, 11, 1, Condition::FourthAndCubeNotOne),
    row!(17, "(x,-1,-x,1,-x^-1,-1,x^-1)", [X;1, MINUS;1, ev(true, 1, 0);1, ONE;1, ev(true, -1, 0);1, MINUS;1, XI;1], 2, 9, 1, Condition::FourthNotOne),
    row!(18, "(xJ(2),x^-1J(2),x^2,x^-2,1)", [X;2, XI;2, X2;1, X2I;1, ONE;1], 2, 7, 1, Condition::FourthNotOne),
    row!(19, "(xJ(2),x^-1J(2),J(3))", [X;2, XI;2, ONE;3], 2, 7, 1, Condition::SquareNotOne),
    row!(20, "(x,y,xy,1,(xy)^-1,y^-1,x^-1)",
        [X;1, ev(false, 0, 1);1, ev(false, 1, 1);1, ONE;1, ev(false, -1, -1);1, ev(false, 0, -1);1, XI;1],
        2, 7, 2, Condition::PairwiseDistinct),
];

pub fn template(id: u8) -> &'static Template {
    &TABLE[usize::from(id) - 1]
}

/// A recognized `G₂` class with its canonical parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2ClassInfo {
    pub template_id: u8,
    pub name: String,
    pub parameters: Vec<(String, Character)>,
    pub dim_c_g2: u32,
    pub dim_c_gl7: u32,
}

impl G2ClassInfo {
    fn new(t: &Template, x: Character, y: Character) -> Self {
        let parameters = match t.params {
            0 => vec![],
            1 => vec![("x".to_string(), x)],
            _ => vec![("x".to_string(), x), ("y".to_string(), y)],
        };
        G2ClassInfo {
            template_id: t.id,
            name: t.name.to_string(),
            parameters,
            dim_c_g2: t.dim_g2,
            dim_c_gl7: t.dim_gl7,
        }
    }
}

/// Smallest `(x, y)` for which template `t` instantiates to `m`.
fn match_template(t: &Template, m: &LocalMonodromy) -> Option<(Character, Character)> {
    let chars: Vec<Character> = m.characters().collect();
    let xs: Vec<Character> = if t.params == 0 {
        vec![Character::TRIVIAL]
    } else {
        chars.clone()
    };
    let ys: Vec<Character> = if t.params == 2 {
        chars
    } else {
        vec![Character::TRIVIAL]
    };
    for &x in &xs {
        for &y in &ys {
            if t.instantiate(x, y).as_ref() == Some(m) {
                return Some((x, y));
            }
        }
    }
    None
}

/// The unique Table 1 row matching `m`, with its smallest parameters.
pub fn recognize(m: &LocalMonodromy) -> Result<G2ClassInfo> {
    if m.degree() != 7 {
        return Err(Error::WrongDegree {
            expected: 7,
            found: m.degree(),
        });
    }
    let hits: Vec<G2ClassInfo> = TABLE
        .iter()
        .filter_map(|t| match_template(t, m).map(|(x, y)| G2ClassInfo::new(t, x, y)))
        .collect();
    match hits.len() {
        0 => Err(Error::NotInG2),
        1 => Ok(hits.into_iter().next().expect("one hit")),
        _ => Err(Error::AmbiguousClass(
            hits.iter()
                .map(|h| h.name.clone())
                .collect::<Vec<_>>()
                .join(", "),
        )),
    }
}

/// Every concrete class of Table 1 whose characters have order dividing `b`,
/// one entry per distinct Jordan form.
pub fn concrete_classes(b: u64) -> Vec<(G2ClassInfo, LocalMonodromy)> {
    let mu = Character::all_of_order_dividing(b);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for t in &TABLE {
        let xs: &[Character] = if t.params == 0 {
            &[Character::TRIVIAL]
        } else {
            &mu
        };
        let ys: &[Character] = if t.params == 2 {
            &mu
        } else {
            &[Character::TRIVIAL]
        };
        for &x in xs {
            for &y in ys {
                if let Some(m) = t.instantiate(x, y) {
                    let key = format!("{m:?}");
                    if seen.insert(key) {
                        out.push((G2ClassInfo::new(t, x, y), m));
                    }
                }
            }
        }
    }
    out
}
