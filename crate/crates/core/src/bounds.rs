//! Scalar syzygy bounds and audits of computed syzygy degrees against them.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::IrrepCatalog;
use crate::invariant::{build_e, ComplementOrder, GeneratorMode, InvariantRing, NoetherResult};
use crate::syzygy::{KoszulComplex, SyzygyResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundValues {
    /// `(β−1)g − (m−1)βp`; may be negative.
    pub delta_p: i64,
    /// `β²mp + δ_p`.
    pub theorem: i64,
    /// `pg³`.
    pub corollary: i64,
    /// `(p+1)g`.
    pub derksen: i64,
    /// `(β−1)·dim V + βp`.
    pub lemma2_ceiling: i64,
}

pub fn compute_bounds(g: usize, m: usize, beta: usize, dim_v: usize, p: usize) -> BoundValues {
    let (g, m, b, v, p) = (g as i64, m as i64, beta as i64, dim_v as i64, p as i64);
    let delta_p = (b - 1) * g - (m - 1) * b * p;
    BoundValues {
        delta_p,
        theorem: b * b * m * p + delta_p,
        corollary: p * g * g * g,
        derksen: (p + 1) * g,
        lemma2_ceiling: (b - 1) * v + b * p,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    /// The syzygy space is zero, so the bound holds vacuously.
    Vacuous,
    #[serde(rename = "VIOLATED")]
    Violated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Vacuous => "vacuous",
            Verdict::Violated => "VIOLATED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub bound: i64,
    pub verdict: Verdict,
    /// The value equals the bound.
    pub tight: bool,
    /// False when the bound was evaluated with the fallback Noether number.
    pub certified: bool,
}

fn judge(value: Option<usize>, bound: i64, certified: bool) -> BoundVerdict {
    let (verdict, tight) = match value {
        None => (Verdict::Vacuous, false),
        Some(v) if v as i64 <= bound => (Verdict::Satisfied, v as i64 == bound),
        Some(_) => (Verdict::Violated, false),
    };
    BoundVerdict { bound, verdict, tight, certified }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub derksen: BoundVerdict,
    pub theorem: BoundVerdict,
    pub corollary: BoundVerdict,
    pub lemma2: BoundVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub g: usize,
    pub n: usize,
    pub m: usize,
    pub d_list: Vec<usize>,
    pub dim_v: usize,
    pub beta_v: usize,
    pub beta: NoetherResult,
    pub p: usize,
    pub bounds: BoundValues,
    pub s_p: SyzygyResult,
    pub s_prime_p: Option<SyzygyResult>,
    pub verdicts: Verdicts,
}

impl BoundReport {
    pub fn conjecture_violated(&self) -> bool {
        self.verdicts.derksen.verdict == Verdict::Violated
    }
}

/// Audits `s_p` (and `s'_p` in full mode) for every `p` in `p_range`.
///
/// Proven bounds abort with [`Error::Inconsistency`] when violated; a
/// violated conjecture bound is reported in the verdicts instead.
pub fn audit(
    ring: &InvariantRing,
    catalog: &IrrepCatalog,
    beta: &NoetherResult,
    p_range: RangeInclusive<usize>,
    mode: GeneratorMode,
) -> Result<Vec<BoundReport>> {
    let minimal = build_e(ring, GeneratorMode::Minimal, beta, ComplementOrder::Forward)?;
    let full = match mode {
        GeneratorMode::Full => Some(build_e(ring, GeneratorMode::Full, beta, ComplementOrder::Forward)?),
        GeneratorMode::Minimal => None,
    };
    let k_min = KoszulComplex::new(ring, &minimal)?;
    let k_full = full.as_ref().map(|f| KoszulComplex::new(ring, f)).transpose()?;
    let (g, m, n) = (catalog.group().order(), catalog.m(), catalog.n());
    let dim_v = ring.rep().degree();
    let mut out = Vec::new();
    for p in p_range {
        if p == 0 {
            return Err(Error::invalid("bounds are defined for p ≥ 1"));
        }
        let s_p = k_min.syzygy_degree(p, None)?;
        let s_prime_p = k_full.as_ref().map(|k| k.syzygy_degree(p, None)).transpose()?;
        let bounds = compute_bounds(g, m, beta.value, dim_v, p);
        let top = match &s_prime_p {
            Some(s) => s.value.max(s_p.value),
            None => s_p.value,
        };
        let lemma2_value = s_prime_p.as_ref().map_or(s_p.value, |s| s.value);
        let verdicts = Verdicts {
            derksen: judge(s_p.value, bounds.derksen, true),
            theorem: judge(top, bounds.theorem, beta.exact),
            corollary: judge(top, bounds.corollary, true),
            lemma2: judge(lemma2_value, bounds.lemma2_ceiling, true),
        };
        for (name, v) in [("theorem", &verdicts.theorem), ("corollary", &verdicts.corollary), ("lemma 2", &verdicts.lemma2)] {
            if v.verdict == Verdict::Violated && v.certified {
                return Err(Error::inconsistency(format!("proven bound violated — implementation bug ({name}, p = {p})")));
            }
        }
        out.push(BoundReport {
            g,
            n,
            m,
            d_list: catalog.degrees(),
            dim_v,
            beta_v: minimal.beta_v.unwrap_or(0),
            beta: *beta,
            p,
            bounds,
            s_p,
            s_prime_p,
            verdicts,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub g_max: usize,
    pub p_max: usize,
    pub tuples_checked: u64,
    pub failures: Vec<String>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively checks, for `1 ≤ β, m ≤ g ≤ g_max` and `1 ≤ p ≤ p_max`:
/// `(β−1)(βmp+g)+βp = β²mp+δ_p ≤ (g−1)(g²p+g)+gp = pg³ − g(pg+1−p−g) ≤ pg³`
/// and `p + g ≤ pg + 1`.
pub fn inequality_chain_check(g_max: usize, p_max: usize) -> ChainReport {
    let mut failures = Vec::new();
    let mut tuples_checked = 0;
    for g in 1..=g_max as i128 {
        for p in 1..=p_max as i128 {
            let top = (g - 1) * (g * g * p + g) + g * p;
            let rewritten = p * g * g * g - g * (p * g + 1 - p - g);
            if top != rewritten {
                failures.push(format!("rewriting fails at g={g}, p={p}"));
            }
            if p + g > p * g + 1 {
                failures.push(format!("p+g ≤ pg+1 fails at g={g}, p={p}"));
            }
            if rewritten > p * g * g * g {
                failures.push(format!("final step fails at g={g}, p={p}"));
            }
            for m in 1..=g {
                for b in 1..=g {
                    tuples_checked += 1;
                    let bv = compute_bounds(g as usize, m as usize, b as usize, 1, p as usize);
                    let derived = (b - 1) * (b * m * p + g) + b * p;
                    if derived != bv.theorem as i128 {
                        failures.push(format!("identity fails at β={b}, m={m}, g={g}, p={p}"));
                    }
                    if derived > top {
                        failures.push(format!("monotone step fails at β={b}, m={m}, g={g}, p={p}"));
                    }
                    if bv.corollary < bv.theorem {
                        failures.push(format!("corollary below theorem at β={b}, m={m}, g={g}, p={p}"));
                    }
                }
            }
        }
    }
    ChainReport { g_max, p_max, tuples_checked, failures }
}

/// `m² ≤ n·g`.
pub fn m_bound_check(n: usize, g: usize, m: usize) -> bool {
    (m as u64).pow(2) <= n as u64 * g as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin::builtin;
    use crate::invariant::noether_number;

    #[test]
    fn formula_examples() {
        let b = compute_bounds(2, 2, 2, 2, 1);
        assert_eq!((b.delta_p, b.theorem, b.corollary, b.derksen), (0, 8, 8, 4));
        let b = compute_bounds(3, 3, 3, 2, 1);
        assert_eq!((b.delta_p, b.theorem, b.corollary, b.derksen), (0, 27, 27, 6));
        for p in 1..5 {
            let b = compute_bounds(1, 1, 1, 3, p);
            assert_eq!((b.delta_p, b.theorem, b.corollary, b.derksen), (0, p as i64, p as i64, p as i64 + 1));
        }
        assert!(compute_bounds(6, 4, 4, 1, 12).delta_p < 0);
    }

    #[test]
    fn chain_holds() {
        let r = inequality_chain_check(12, 12);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.tuples_checked, (1..=12u64).map(|g| g * g).sum::<u64>() * 12);
    }

    #[test]
    fn m_bound_examples() {
        assert!(m_bound_check(3, 6, 4));
        assert!(m_bound_check(5, 8, 6));
        assert!(m_bound_check(7, 7, 7));
        assert!(!m_bound_check(1, 2, 2));
    }

    #[test]
    fn audit_quadratic_veronese() {
        let cat = builtin("builtin:cyclic:2").unwrap().catalog;
        let beta = noether_number(&cat, 8, 20000).unwrap();
        let ring = InvariantRing::isotypic(&cat, &[0, 2], 20000).unwrap();
        let reports = audit(&ring, &cat, &beta, 1..=2, GeneratorMode::Full).unwrap();
        let r1 = &reports[0];
        assert_eq!(r1.s_p.value, Some(4));
        assert!(r1.verdicts.derksen.tight);
        assert_eq!(r1.verdicts.theorem.verdict, Verdict::Satisfied);
        assert_eq!(r1.verdicts.corollary.bound, 8);
        let r2 = &reports[1];
        assert_eq!(r2.s_p.value, None);
        assert_eq!(r2.verdicts.derksen.verdict, Verdict::Vacuous);
    }
}
