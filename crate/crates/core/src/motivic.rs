//! Exponent data of the Kummer hypersurface `Hyp(n₁, n₂)`:
//!
//! `Yᴺ = ∏_{a,i} (X_a − T_i)^{e(a,i)} · ∏_k (X_{k+1} − X_k)^{f(k)}`
//!
//! on the open set where all `X_a ≠ T_i`, consecutive `X` differ and `Y ≠ 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents reduced into `[0, N)`; `e[a][i]` is the exponent of `X_{a+1} − T_{i+1}`
/// and `f[k]` that of `X_{k+2} − X_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypEquation {
    #[serde(rename = "N")]
    pub n: u32,
    pub n1: i64,
    pub n2: i64,
    pub e: [[u32; 2]; 7],
    pub f: [u32; 6],
}

pub fn hyp_equation(n: u32, n1: i64, n2: i64) -> Result<HypEquation> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidHyp(format!(
            "N = {n} must be positive and even"
        )));
    }
    let m = i64::from(n);
    let h = m / 2;
    let r = |x: i64| x.rem_euclid(m) as u32;
    let (n1r, n2r) = (n1.rem_euclid(m), n2.rem_euclid(m));
    let mut e = [[0u32; 2]; 7];
    for (a, row) in e.iter_mut().enumerate() {
        if a % 2 == 0 {
            row[0] = r(h);
        }
    }
    e[0][1] = r(h + n1r + n2r);
    e[1][1] = r(h - n1r);
    e[3][1] = r(h + n1r - n2r);
    e[5][1] = r(h - n1r);
    let f = [
        r(h - n1r - 2 * n2r),
        r(h + n1r + 2 * n2r),
        r(h - n1r - n2r),
        r(h + n1r + n2r),
        r(h - n1r),
        r(h + n1r),
    ];
    Ok(HypEquation {
        n,
        n1: n1r,
        n2: n2r,
        e,
        f,
    })
}

/// A linear factor: `X_{k+1} − X_k` or `X_a − t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Poly {
    Difference(u8),
    Shift(u8, i64),
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Poly::Difference(k) => write!(f, "X{}-X{}", k + 1, k),
            Poly::Shift(a, 0) => write!(f, "X{a}"),
            Poly::Shift(a, t) if t > 0 => write!(f, "X{a}-{t}"),
            Poly::Shift(a, t) => write!(f, "X{a}+{}", -t),
        }
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("linear factor {s:?}"));
        let var = |v: &str| -> Result<u8> {
            v.strip_prefix('X')
                .and_then(|d| d.parse::<u8>().ok())
                .filter(|d| (1..=7).contains(d))
                .ok_or_else(bad)
        };
        let Some(pos) = s.get(1..).unwrap_or("").find(['-', '+']).map(|p| p + 1) else {
            return Ok(Poly::Shift(var(s)?, 0));
        };
        let (lhs, rhs) = (&s[..pos], &s[pos + 1..]);
        let a = var(lhs)?;
        if rhs.starts_with('X') {
            let b = var(rhs)?;
            if &s[pos..=pos] != "-" || b + 1 != a {
                return Err(bad());
            }
            return Ok(Poly::Difference(b));
        }
        let t: i64 = rhs.parse().map_err(|_| bad())?;
        if t <= 0 {
            return Err(bad());
        }
        Ok(Poly::Shift(a, if &s[pos..=pos] == "-" { t } else { -t }))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: Poly,
    pub exp: u32,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly {
            Poly::Shift(_, 0) => write!(f, "{}", self.poly)?,
            p => write!(f, "({p})")?,
        }
        if self.exp != 1 {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

/// `Hyp(n₁, n₂)` with `T₁, T₂` fixed; `X₇` stays symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializedEquation {
    #[serde(rename = "N")]
    pub n: u32,
    pub t1: i64,
    pub t2: i64,
    /// Differences first, then the `T₁`-factors, then the `T₂`-factors;
    /// zero exponents are dropped.
    pub factors: Vec<Factor>,
}

impl SpecializedEquation {
    pub fn equation(&self) -> String {
        let rhs = if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("*")
        };
        format!("Y^{} = {rhs}", self.n)
    }

    pub fn constraints(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in [self.t1, self.t2] {
            out.push(format!("X1..X7 != {t}"));
        }
        out.push("X(k+1) != X(k) for k = 1..6".to_string());
        out.push("Y != 0".to_string());
        out
    }

    /// The right-hand side at `x = (x₁, ..., x₇)` modulo `q`.
    pub fn evaluate_mod(&self, x: &[u64; 7], q: u64) -> u64 {
        let qi = q as i128;
        let mut acc: i128 = 1;
        for fac in &self.factors {
            let v = match fac.poly {
                Poly::Difference(k) => x[usize::from(k)] as i128 - x[usize::from(k) - 1] as i128,
                Poly::Shift(a, t) => x[usize::from(a) - 1] as i128 - i128::from(t),
            }
            .rem_euclid(qi);
            for _ in 0..fac.exp {
                acc = acc * v % qi;
            }
        }
        acc as u64
    }
}

impl fmt::Display for SpecializedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.equation())
    }
}

pub fn specialize_and_render(h: &HypEquation, t1: i64, t2: i64) -> Result<SpecializedEquation> {
    if t1 == t2 {
        return Err(Error::InvalidHyp(format!("T1 = T2 = {t1}")));
    }
    let mut factors = Vec::new();
    for (k, &exp) in h.f.iter().enumerate() {
        factors.push(Factor {
            poly: Poly::Difference(k as u8 + 1),
            exp,
        });
    }
    for (i, t) in [t1, t2].into_iter().enumerate() {
        for (a, row) in h.e.iter().enumerate() {
            factors.push(Factor {
                poly: Poly::Shift(a as u8 + 1, t),
                exp: row[i],
            });
        }
    }
    factors.retain(|f| f.exp != 0);
    Ok(SpecializedEquation {
        n: h.n,
        t1,
        t2,
        factors,
    })
}
