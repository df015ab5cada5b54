//! Point counts on the fibers `X₇ = t` of the specialized double cover
//!
//! `Y² = ∏_{k=1}^{6}(x_{k+1} − x_k) · x₁x₃x₅x₇ · (x₁−1)(x₂−1)(x₄−1)(x₆−1)`
//!
//! over a prime field, on the domain `x_a ∉ {0, 1}`, `x_{a+1} ≠ x_a`.
//!
//! The outermost coordinate `x₁` is split across worker threads; each worker
//! returns integer sums that are reduced in `x₁` order.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Sum of the quadratic character over the domain, from a lookup table.
    CharSum,
    /// Count of `(Y, x)` with `Y ≠ 0` and `Y² = f(x)`.
    Direct,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "char-sum" => Ok(Method::CharSum),
            "direct" => Ok(Method::Direct),
            _ => Err(Error::Parse(format!("unknown counting method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterSumReport {
    pub q: u64,
    pub t: u64,
    pub method: Method,
    /// Number of admissible `(x₁, ..., x₆)`.
    pub domain_size: u64,
    /// `Σ χ₂(f(x, t))`; for the direct method, `hyp_count − domain_size`.
    pub s_value: i64,
    /// `#Hyp_t(F_q)`; for the character-sum method, `domain_size + s_value`.
    pub hyp_count: u64,
    /// Seconds.
    pub wall_time: f64,
    pub threads: usize,
}

impl CharacterSumReport {
    /// Equality of every field except `wall_time` and `threads`.
    pub fn same_counts(&self, other: &Self) -> bool {
        (
            self.q,
            self.t,
            self.method,
            self.domain_size,
            self.s_value,
            self.hyp_count,
        ) == (
            other.q,
            other.t,
            other.method,
            other.domain_size,
            other.s_value,
            other.hyp_count,
        )
    }
}

/// Both counts of one fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberCheck {
    pub q: u64,
    pub t: u64,
    pub char_sum: CharacterSumReport,
    pub direct: CharacterSumReport,
    /// `direct.hyp_count = char_sum.domain_size + char_sum.s_value`.
    pub agree: bool,
}

/// Largest modulus accepted; keeps products of residues inside `u64`.
const MAX_Q: u64 = 1 << 31;

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

pub fn validate_modulus(q: u64) -> Result<()> {
    if q <= 2 || q >= MAX_Q || !is_prime(q) {
        return Err(Error::InvalidModulus(q));
    }
    Ok(())
}

fn validate(q: u64, t: u64) -> Result<()> {
    validate_modulus(q)?;
    if t >= q || t <= 1 {
        return Err(Error::InvalidFiber { q, t });
    }
    Ok(())
}

/// `(q − 3)⁶`: chains in `F_q ∖ {0, 1}` with distinct neighbours ending
/// next to `t`.
pub fn predicted_domain_size(q: u64) -> u64 {
    q.saturating_sub(3).pow(6)
}

/// `χ₂(a)` for `a ∈ F_q` by Euler's criterion.
fn quadratic_table(q: u64) -> Vec<i8> {
    let mut tab = vec![-1i8; q as usize];
    tab[0] = 0;
    for y in 1..q {
        tab[(y * y % q) as usize] = 1;
    }
    tab
}

#[derive(Default, Clone, Copy)]
struct Partial {
    domain: u64,
    s: i64,
    hyp: u64,
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

impl Partial {
    fn merge(self, o: Partial) -> Result<Partial> {
        Ok(Partial {
            domain: self
                .domain
                .checked_add(o.domain)
                .ok_or_else(|| overflow("domain size"))?,
            s: self
                .s
                .checked_add(o.s)
                .ok_or_else(|| overflow("character sum"))?,
            hyp: self
                .hyp
                .checked_add(o.hyp)
                .ok_or_else(|| overflow("point count"))?,
        })
    }
}

/// Visits every admissible `(x₂, ..., x₆)` for fixed `x₁` and hands `f(x, t)`
/// to `visit`.
fn for_each_value(q: u64, t: u64, x1: u64, mut visit: impl FnMut(u64)) {
    let m = |a: u64, b: u64| a * b % q;
    let d = |a: u64, b: u64| (a + q - b) % q;
    // constant part: x₁ x₇ (x₁ − 1)
    let c1 = m(m(x1, t), x1 - 1);
    for x2 in 2..q {
        if x2 == x1 {
            continue;
        }
        let c2 = m(m(c1, d(x2, x1)), x2 - 1);
        for x3 in 2..q {
            if x3 == x2 {
                continue;
            }
            let c3 = m(m(c2, d(x3, x2)), x3);
            for x4 in 2..q {
                if x4 == x3 {
                    continue;
                }
                let c4 = m(m(c3, d(x4, x3)), x4 - 1);
                for x5 in 2..q {
                    if x5 == x4 {
                        continue;
                    }
                    let c5 = m(m(c4, d(x5, x4)), x5);
                    for x6 in 2..q {
                        if x6 == x5 || x6 == t {
                            continue;
                        }
                        visit(m(m(m(c5, d(x6, x5)), x6 - 1), d(t, x6)));
                    }
                }
            }
        }
    }
}

fn count_slice(q: u64, t: u64, x1: u64, method: Method, chi: &[i8]) -> Result<Partial> {
    let mut p = Partial::default();
    let mut ok = true;
    match method {
        Method::CharSum => for_each_value(q, t, x1, |f| {
            p.domain += 1;
            p.s += i64::from(chi[f as usize]);
        }),
        Method::Direct => for_each_value(q, t, x1, |f| {
            p.domain += 1;
            let roots = (1..q).filter(|y| y * y % q == f).count() as u64;
            ok &= f != 0;
            p.hyp += roots;
        }),
    }
    if !ok {
        return Err(Error::InvalidFiber { q, t });
    }
    Ok(p)
}

pub fn count_fiber(q: u64, t: u64, method: Method, threads: usize) -> Result<CharacterSumReport> {
    validate(q, t)?;
    let threads = threads.max(1);
    let start = Instant::now();
    let chi = match method {
        Method::CharSum => quadratic_table(q),
        Method::Direct => Vec::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Overflow(format!("thread pool: {e}")))?;
    let slices: Vec<Result<Partial>> = pool.install(|| {
        (2..q)
            .into_par_iter()
            .map(|x1| count_slice(q, t, x1, method, &chi))
            .collect()
    });
    let mut total = Partial::default();
    for s in slices {
        total = total.merge(s?)?;
    }
    let (s_value, hyp_count) = match method {
        Method::CharSum => {
            let h = i64::try_from(total.domain)
                .ok()
                .and_then(|d| d.checked_add(total.s))
                .ok_or_else(|| overflow("point count"))?;
            (total.s, h as u64)
        }
        Method::Direct => {
            let s = i64::try_from(total.hyp)
                .ok()
                .zip(i64::try_from(total.domain).ok())
                .map(|(h, d)| h - d)
                .ok_or_else(|| overflow("character sum"))?;
            (s, total.hyp)
        }
    };
    Ok(CharacterSumReport {
        q,
        t,
        method,
        domain_size: total.domain,
        s_value,
        hyp_count,
        wall_time: start.elapsed().as_secs_f64(),
        threads,
    })
}

/// Both methods on one fiber.
pub fn check_fiber(q: u64, t: u64, threads: usize) -> Result<FiberCheck> {
    let char_sum = count_fiber(q, t, Method::CharSum, threads)?;
    let direct = count_fiber(q, t, Method::Direct, threads)?;
    let agree = char_sum.domain_size == direct.domain_size
        && i128::from(direct.hyp_count)
            == i128::from(char_sum.domain_size) + i128::from(char_sum.s_value);
    Ok(FiberCheck {
        q,
        t,
        char_sum,
        direct,
        agree,
    })
}

/// [`check_fiber`] for every `t ∈ F_q ∖ {0, 1}` and every `q`, ordered by
/// `q`, then `t`. Every modulus is validated before any counting starts;
/// failures of individual fibers are collected.
pub fn sweep(qs: &[u64], threads: usize) -> Result<Vec<FiberCheck>> {
    for &q in qs {
        validate_modulus(q)?;
    }
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for &q in qs {
        for t in 2..q {
            match check_fiber(q, t, threads) {
                Ok(c) => out.push(c),
                Err(e) => errors.push(format!("q = {q}, t = {t}: {e}")),
            }
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(Error::FiberErrors(errors))
    }
}
