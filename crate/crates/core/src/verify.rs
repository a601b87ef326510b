//! Exhaustive sweep over all length-zero pairs of `Gamma_n`.
//!
//! For every pair the sweep compares the verdict from the dimension and
//! tangent conditions with the Betti-number criterion, and checks the
//! intermediate identities relating the two: the Betti shift under a square
//! move, the zero pattern forced by a long move, both forms of the dimension
//! difference, the tangent comparison shortcut, and non-vanishing of the
//! intersection product for pairs satisfying condition C.

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::graph::StrataIndex;
use crate::incidence::{
    chow, covers_of, resolve_incidence_with, standard_window, CoverPair, IncidenceVerdict,
};
use crate::strata::{tangent_window_with, Stratum};

/// A failed check, with the pair (or single diagram) it failed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: u32,
    pub check: &'static str,
    pub phi: String,
    pub psi: Option<String>,
    pub u: usize,
    pub v: usize,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "COUNTEREXAMPLE n={} check={} phi={}",
            self.n, self.check, self.phi
        )?;
        if let Some(psi) = &self.psi {
            write!(f, " psi={psi} u={} v={}", self.u, self.v)?;
        }
        Ok(())
    }
}

/// Per-`n` tallies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub n: u32,
    pub diagrams: usize,
    pub covers: usize,
    pub incident: usize,
    pub not_incident: usize,
    pub type_zero: usize,
    pub chow_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} diagrams={} covers={} incident={} not_incident={} type_zero={} chow_checked={} counterexamples={}",
            self.n,
            self.diagrams,
            self.covers,
            self.incident,
            self.not_incident,
            self.type_zero,
            self.chow_checked,
            self.counterexamples.len()
        )
    }
}

/// `e` in the dimension-difference formula.
pub fn dimension_offset(u: usize, v: usize) -> i64 {
    match v - u {
        0 => -1,
        1 => 1,
        _ => 0,
    }
}

/// `(a~_l - b~_l) - (a_l - b_l)` for a square move with parameters `u <= v`.
pub fn betti_shift(l: i64, u: usize, v: usize) -> i64 {
    let (u, v) = (u as i64, v as i64);
    let gap = v - u;
    let pick = |short: i64, next: i64, long: i64| match gap {
        0 => short,
        1 => next,
        _ => long,
    };
    if l == u {
        -1
    } else if l == u + 1 {
        if gap == 0 {
            3
        } else {
            2
        }
    } else if l == u + 2 {
        pick(-3, 0, -1)
    } else if l == v + 1 {
        pick(3, 0, 1)
    } else if l == v + 2 {
        if gap == 0 {
            -3
        } else {
            -2
        }
    } else if l == v + 3 {
        1
    } else {
        0
    }
}

struct PairCtx<'a> {
    p: &'a CoverPair,
    phi: &'a Stratum,
    psi: &'a Stratum,
    verdict: IncidenceVerdict,
}

impl PairCtx<'_> {
    fn s(&self, i: i64) -> i64 {
        self.phi.hf.diagram().get(i) as i64
    }

    fn uv(&self) -> (i64, i64) {
        (self.p.u() as i64, self.p.v() as i64)
    }

    fn b_equiv_c(&self) -> bool {
        self.verdict.incident == self.verdict.condition_c
    }

    fn type_zero_incident(&self) -> bool {
        !self.verdict.type_zero || self.verdict.incident
    }

    fn betti_shift_holds(&self) -> bool {
        let (u, v) = self.uv();
        ((u - 2)..=(v + 6)).all(|l| {
            self.psi.betti.net(l) - self.phi.betti.net(l) == betti_shift(l, self.p.u(), self.p.v())
        })
    }

    fn zero_pattern_holds(&self) -> bool {
        let (u, v) = self.uv();
        if v < u + 1 {
            return true;
        }
        let b = &self.phi.betti;
        ((u + 1)..=(v + 1)).all(|i| b.a(i) == 0)
            && ((u + 2)..=(v + 2)).all(|i| b.b(i) == 0)
            && b.a(u) <= b.b(u + 1) + 1
            && b.a(v + 2) > 0
            && b.b(v + 3) <= b.a(v + 2)
    }

    fn dimension_formulas_hold(&self) -> bool {
        let (u, v) = self.uv();
        let e = dimension_offset(self.p.u(), self.p.v());
        let delta = self.psi.dim as i64 - self.phi.dim as i64;
        let b = &self.phi.betti;
        let by_betti: i64 = (u..=v).map(|i| b.net(i)).sum::<i64>()
            - ((u + 3)..=(v + 3)).map(|i| b.net(i)).sum::<i64>()
            + e;
        let s = |i| self.s(i);
        let by_diagram =
            -s(u - 2) + s(u - 1) + s(u + 1) - s(u + 2) + s(v - 1) - s(v) - s(v + 2) + s(v + 3) + e;
        delta == by_betti && delta == by_diagram
    }

    fn long_move_dimension_holds(&self) -> bool {
        let (u, v) = self.uv();
        if v < u + 2 {
            return true;
        }
        let b = &self.phi.betti;
        let (dphi, dpsi) = (self.phi.dim, self.psi.dim);
        let criterion = b.a(u) == b.b(u + 1) + 1 && b.a(v + 2) == b.b(v + 3);
        if (dphi < dpsi) != criterion {
            return false;
        }
        !criterion
            || (dpsi == dphi + 1 && Some(u) == b.initial_degree() && b.a(u) > 0 && b.b(v + 3) > 0)
    }

    fn tangent_pointwise_holds(&self, window: RangeInclusive<i64>) -> bool {
        let (u, v) = self.uv();
        let tp = tangent_window_with(&self.phi.hf, &self.phi.betti, window.clone());
        let tq = tangent_window_with(&self.psi.hf, &self.psi.betti, window);
        let holds = tp
            .iter()
            .zip(tq.iter())
            .all(|((l, x), (_, y))| l == u - 3 || l == v || y <= x);
        holds
    }

    fn tangent_shortcut_holds(&self) -> bool {
        let (u, v) = self.uv();
        let b = &self.phi.betti;
        self.verdict.tangent_ok == (b.a(u) != 0 && b.b(v + 3) != 0)
    }

    /// `None` when the product check does not apply to this pair.
    fn chow_holds(&self) -> Option<bool> {
        if !self.verdict.condition_c || self.p.v() < self.p.u() + 1 {
            return None;
        }
        Some(chow::verify_intersections_with(self.p, &self.phi.betti) == Ok(true))
    }
}

fn diagram_checks(n: u32, st: &Stratum, out: &mut Vec<Counterexample>) {
    let d = st.hf.diagram();
    let s = |i: i64| d.get(i) as i64;
    let b = &st.betti;
    let top = d.len() as i64 + 3;
    let mut running = 0;
    let mut cumulative_ok = true;
    let mut local_ok = true;
    for l in 0..=top {
        running += b.net(l);
        cumulative_ok &= running == 1 + s(l - 1) - s(l);
        if l > 0 {
            local_ok &= b.net(l) == -s(l) + 2 * s(l - 1) - s(l - 2);
        }
    }
    // The first generator sits one degree past the last strict ascent of `s`.
    let sigma_ok = n == 0 || b.initial_degree() == Some(d.sigma() as i64 + 1);
    for (ok, check) in [
        (cumulative_ok, "cumulative-betti"),
        (local_ok, "local-betti"),
        (sigma_ok, "sigma"),
    ] {
        if !ok {
            out.push(Counterexample {
                n,
                check,
                phi: st.hf.to_string(),
                psi: None,
                u: 0,
                v: 0,
            });
        }
    }
}

/// Runs every check on all length-zero pairs of `Gamma_n`.
pub fn sweep_n(n: u32) -> SweepSummary {
    let idx = StrataIndex::build(n);
    let per_node: Vec<SweepSummary> = idx
        .strata
        .par_iter()
        .map(|phi| {
            let mut acc = SweepSummary::default();
            diagram_checks(n, phi, &mut acc.counterexamples);
            for p in covers_of(&phi.hf) {
                let psi = &idx.strata[idx
                    .id_of(p.psi().diagram())
                    .expect("cover stays in Gamma_n")];
                let verdict = resolve_incidence_with(&p, phi, psi);
                let ctx = PairCtx {
                    p: &p,
                    phi,
                    psi,
                    verdict,
                };
                acc.covers += 1;
                if verdict.incident {
                    acc.incident += 1;
                } else {
                    acc.not_incident += 1;
                }
                acc.type_zero += usize::from(verdict.type_zero);
                let chow = ctx.chow_holds();
                acc.chow_checked += usize::from(chow.is_some());
                let checks = [
                    (ctx.b_equiv_c(), "B<=>C"),
                    (ctx.type_zero_incident(), "type-zero=>incident"),
                    (ctx.betti_shift_holds(), "betti-shift"),
                    (ctx.zero_pattern_holds(), "long-move-zero-pattern"),
                    (ctx.dimension_formulas_hold(), "dimension-difference"),
                    (ctx.long_move_dimension_holds(), "long-move-dimension"),
                    (
                        ctx.tangent_pointwise_holds(standard_window(&p)),
                        "tangent-pointwise",
                    ),
                    (ctx.tangent_shortcut_holds(), "tangent-shortcut"),
                    (chow.unwrap_or(true), "chow-nonvanishing"),
                ];
                for (ok, check) in checks {
                    if !ok {
                        acc.counterexamples.push(Counterexample {
                            n,
                            check,
                            phi: p.phi().to_string(),
                            psi: Some(p.psi().to_string()),
                            u: p.u(),
                            v: p.v(),
                        });
                    }
                }
            }
            acc
        })
        .collect();
    // Node order is preserved by the indexed collect, so the merge is deterministic.
    let mut total = SweepSummary {
        n,
        diagrams: idx.strata.len(),
        ..Default::default()
    };
    for part in per_node {
        total.covers += part.covers;
        total.incident += part.incident;
        total.not_incident += part.not_incident;
        total.type_zero += part.type_zero;
        total.chow_checked += part.chow_checked;
        total.counterexamples.extend(part.counterexamples);
    }
    total
}

pub fn sweep(range: RangeInclusive<u32>) -> Vec<SweepSummary> {
    range.map(sweep_n).collect()
}
