//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Every reference value below is recomputed from the diagram by code in this
//! file (plain `i64` convolutions, direct sums, brute-force searches), not by
//! the library routines under test.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hilbert_strata::diagrams::{enumerate_diagrams, CastelnuovoDiagram, HilbertFunction};
use hilbert_strata::graph::{build_hilbert_graph, detect_noncatenary, StrataIndex};
use hilbert_strata::incidence::{
    chow_product, condition_b_with, condition_c_from, covers_of, is_type_zero, resolve_incidence,
    standard_window, verify_intersections, CoverPair, LinearForm,
};
use hilbert_strata::resolution::generic_betti;
use hilbert_strata::strata::{stratum_dim, tangent_function, tangent_leq};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Independent oracles

/// Number of ways to write `n` as a sum of distinct positive parts below `max_part + 1`,
/// by generating every strictly decreasing sequence.
fn distinct_partitions(n: u32, max_part: u32) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n))
        .map(|p| distinct_partitions(n - p, p - 1))
        .sum()
}

fn svec(d: &CastelnuovoDiagram) -> Vec<i64> {
    d.values().iter().map(|&x| x as i64).collect()
}

fn s_at(s: &[i64], i: i64) -> i64 {
    if i < 0 {
        0
    } else {
        s.get(i as usize).copied().unwrap_or(0)
    }
}

/// Coefficients of `1 - (1 - t)^2 s(t)`, degrees `0..len(s) + 2`.
fn numerator_oracle(s: &[i64]) -> Vec<i64> {
    let mut q = vec![0i64; s.len() + 3];
    q[0] = 1;
    for (i, &x) in s.iter().enumerate() {
        q[i] -= x;
        q[i + 1] += 2 * x;
        q[i + 2] -= x;
    }
    q
}

fn net_oracle(s: &[i64], l: i64) -> i64 {
    let q = numerator_oracle(s);
    if l < 0 {
        0
    } else {
        q.get(l as usize).copied().unwrap_or(0)
    }
}

/// `1 + n + sum s_i s_(i+1) - sum s_i s_(i+2)`.
fn dim_oracle(s: &[i64]) -> i64 {
    let n: i64 = s.iter().sum();
    if n == 0 {
        return 0;
    }
    let c: i64 = (0..s.len() as i64)
        .map(|i| s_at(s, i) * s_at(s, i + 1) - s_at(s, i) * s_at(s, i + 2))
        .sum();
    1 + n + c
}

fn binom2(m: i64) -> i64 {
    if m < 0 {
        0
    } else {
        (m + 1) * (m + 2) / 2
    }
}

/// `h^0(T(m))` from the Euler sequence `0 -> O -> O(1)^3 -> T -> 0`.
fn h_tangent_oracle(m: i64) -> i64 {
    3 * binom2(m + 1) - binom2(m)
}

fn hilbert_oracle(s: &[i64], m: i64) -> i64 {
    (0..=m).map(|i| s_at(s, i)).sum()
}

fn tangent_oracle(s: &[i64], m: i64) -> i64 {
    let b = (-net_oracle(s, m + 3)).max(0);
    h_tangent_oracle(m) - 3 * hilbert_oracle(s, m + 1) + hilbert_oracle(s, m) + b
}

fn a_of(s: &[i64], l: i64) -> i64 {
    net_oracle(s, l).max(0)
}

fn b_of(s: &[i64], l: i64) -> i64 {
    (-net_oracle(s, l)).max(0)
}

// ---------------------------------------------------------------------------
// Criteria

fn enumeration() -> Outcome {
    for n in 0..=40 {
        let got = enumerate_diagrams(n).len();
        let want = distinct_partitions(n, n);
        ensure(got == want, || {
            format!("n={n}: {got} diagrams, {want} distinct partitions")
        })?;
    }
    let g3 = enumerate_diagrams(3).len();
    let g17 = enumerate_diagrams(17).len();
    ensure(g3 == 2 && g17 == 38, || {
        format!("|Gamma_3|={g3} |Gamma_17|={g17}")
    })?;
    Ok(format!(
        "n<=40 match distinct-part partitions; |Gamma_3|={g3}, |Gamma_17|={g17}"
    ))
}

fn b_equiv_c() -> Outcome {
    let mut pairs = 0usize;
    let mut mismatches = 0usize;
    for n in 1..=70 {
        let idx = StrataIndex::build(n);
        for phi in &idx.strata {
            for p in covers_of(&phi.hf) {
                let psi = &idx.strata[idx.id_of(p.psi().diagram()).unwrap()];
                let b = condition_b_with(&p, phi, psi).holds();
                let c = condition_c_from(&phi.betti, p.u(), p.v());
                pairs += 1;
                if b != c {
                    mismatches += 1;
                    eprintln!("  mismatch n={n} {} -> {}: B={b} C={c}", p.phi(), p.psi());
                }
            }
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} mismatches among {pairs} pairs")
    })?;
    Ok(format!("{pairs} length-zero pairs, n<=70, 0 mismatches"))
}

fn identity_suite() -> Outcome {
    let mut pairs = 0usize;
    let mut diagrams = 0usize;
    for n in 1..=25u32 {
        for d in enumerate_diagrams(n) {
            diagrams += 1;
            let s = svec(&d);
            let phi = d.hilbert_function();
            let betti = generic_betti(&phi);
            let top = s.len() as i64 + 4;
            // library Betti table equals the convolution oracle
            for l in -2..=top {
                ensure(betti.net(l) == net_oracle(&s, l), || {
                    format!("{d}: Betti at {l}")
                })?;
            }
            ensure(stratum_dim(&phi) as i64 == dim_oracle(&s), || {
                format!("{d}: dim")
            })?;
            let mut running = 0;
            for l in 0..=top {
                running += betti.net(l);
                ensure(running == 1 + s_at(&s, l - 1) - s_at(&s, l), || {
                    format!("{d}: cumulative identity at {l}")
                })?;
                if l > 0 {
                    ensure(
                        betti.net(l) == -s_at(&s, l) + 2 * s_at(&s, l - 1) - s_at(&s, l - 2),
                        || format!("{d}: local identity at {l}"),
                    )?;
                }
            }

            for p in covers_of(&phi) {
                pairs += 1;
                let (u, v) = (p.u() as i64, p.v() as i64);
                let t = svec(p.psi().diagram());
                let ctx = || format!("{} -> {} (u={u} v={v})", p.phi(), p.psi());

                // psi differs from phi by a moved square: s~ = s + t^u - t^(v+1)
                for i in 0..top {
                    let want = s_at(&s, i) + i64::from(i == u) - i64::from(i == v + 1);
                    ensure(s_at(&t, i) == want, || {
                        format!("{}: not a square move", ctx())
                    })?;
                }

                // Betti shift: q~ - q = -(t^u - t^(v+1))(1 - t)^2
                for l in -2..=top + 2 {
                    let mut want = 0;
                    for (deg, c) in [
                        (u, -1),
                        (u + 1, 2),
                        (u + 2, -1),
                        (v + 1, 1),
                        (v + 2, -2),
                        (v + 3, 1),
                    ] {
                        if deg == l {
                            want += c;
                        }
                    }
                    ensure(net_oracle(&t, l) - net_oracle(&s, l) == want, || {
                        format!("{}: Betti shift at {l}", ctx())
                    })?;
                }

                // zero pattern and inequalities forced by a long move
                if v > u {
                    ensure(((u + 1)..=(v + 1)).all(|i| a_of(&s, i) == 0), || {
                        format!("{}: a on [u+1,v+1]", ctx())
                    })?;
                    ensure(((u + 2)..=(v + 2)).all(|i| b_of(&s, i) == 0), || {
                        format!("{}: b on [u+2,v+2]", ctx())
                    })?;
                    ensure(a_of(&s, u) <= b_of(&s, u + 1) + 1, || {
                        format!("{}: a_u bound", ctx())
                    })?;
                    ensure(a_of(&s, v + 2) > 0, || format!("{}: a_(v+2) > 0", ctx()))?;
                    ensure(b_of(&s, v + 3) <= a_of(&s, v + 2), || {
                        format!("{}: b_(v+3) bound", ctx())
                    })?;
                }

                // dimension difference, two ways
                let e = match v - u {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                };
                let delta = dim_oracle(&t) - dim_oracle(&s);
                let lib_delta = stratum_dim(p.psi()) as i64 - stratum_dim(p.phi()) as i64;
                let by_betti = (u..=v).map(|i| net_oracle(&s, i)).sum::<i64>()
                    - ((u + 3)..=(v + 3)).map(|i| net_oracle(&s, i)).sum::<i64>()
                    + e;
                let q = |i| s_at(&s, i);
                let by_diagram =
                    -q(u - 2) + q(u - 1) + q(u + 1) - q(u + 2) + q(v - 1) - q(v) - q(v + 2)
                        + q(v + 3)
                        + e;
                ensure(
                    delta == lib_delta && delta == by_betti && delta == by_diagram,
                    || {
                        format!("{}: delta {delta} lib {lib_delta} betti {by_betti} diagram {by_diagram}", ctx())
                    },
                )?;

                // long moves: dimension grows iff a_u = b_(u+1) + 1 and a_(v+2) = b_(v+3)
                if v >= u + 2 {
                    let crit =
                        a_of(&s, u) == b_of(&s, u + 1) + 1 && a_of(&s, v + 2) == b_of(&s, v + 3);
                    ensure((delta > 0) == crit, || {
                        format!("{}: long-move dimension criterion", ctx())
                    })?;
                    if crit {
                        ensure(delta == 1 && b_of(&s, v + 3) > 0 && a_of(&s, u) > 0, || {
                            format!("{}: long-move dimension jump", ctx())
                        })?;
                    }
                }

                // tangent comparison: pointwise off {u-3, v}, and the shortcut
                let lo = -8;
                let hi = top + 8;
                for l in lo..=hi {
                    if l != u - 3 && l != v {
                        ensure(tangent_oracle(&t, l) <= tangent_oracle(&s, l), || {
                            format!("{}: tangent at {l}", ctx())
                        })?;
                    }
                }
                let full = (lo..=hi).all(|l| tangent_oracle(&t, l) <= tangent_oracle(&s, l));
                let windowed = tangent_leq(p.psi(), p.phi(), standard_window(&p)).unwrap();
                let shortcut = a_of(&s, u) != 0 && b_of(&s, v + 3) != 0;
                ensure(full == windowed && windowed == shortcut, || {
                    format!(
                        "{}: tangent full={full} windowed={windowed} shortcut={shortcut}",
                        ctx()
                    )
                })?;
                let lib_t = tangent_function(p.phi(), lo..=hi);
                ensure(
                    lib_t.iter().all(|(l, x)| x == tangent_oracle(&s, l)),
                    || format!("{}: tangent values", ctx()),
                )?;
            }
        }
    }
    Ok(format!("{diagrams} diagrams, {pairs} pairs, n<=25"))
}

fn hf(text: &str) -> HilbertFunction {
    text.parse().unwrap()
}

fn diag(text: &str) -> HilbertFunction {
    text.parse::<CastelnuovoDiagram>()
        .unwrap()
        .hilbert_function()
}

fn known_instances() -> Outcome {
    let g3 = CoverPair::new(hf("1,2,3,3,.."), hf("1,3,3,..")).map_err(|e| e.to_string())?;
    let v = resolve_incidence(&g3);
    ensure(v.incident && v.dims == (5, 6), || {
        format!("Gamma_3 pair: {v:?}")
    })?;

    let p14 =
        CoverPair::new(diag("1,2,3,4,2,1,1"), diag("1,2,3,4,2,2")).map_err(|e| e.to_string())?;
    let v = resolve_incidence(&p14);
    let betti = generic_betti(p14.phi());
    ensure(
        !v.incident && !v.tangent_ok && betti.a(p14.u() as i64) == 0,
        || format!("n=14 pair: {v:?}, a_u={}", betti.a(p14.u() as i64)),
    )?;

    let a42 = CoverPair::new(hf("1,3,6,10,14,15,16,17,.."), hf("1,3,6,10,14,16,17,.."))
        .map_err(|e| e.to_string())?;
    let v = resolve_incidence(&a42);
    ensure(is_type_zero(&a42) && v.type_zero && v.incident, || {
        format!("type-zero pair: {v:?}")
    })?;
    ensure((a42.u(), a42.v()) == (5, 6), || {
        "type-zero pair: (u, v)".into()
    })?;
    Ok("Gamma_3 incident 5->6; n=14 pair not incident (a_u=0); type-zero pair incident".into())
}

fn graph17() -> Outcome {
    let g = build_hilbert_graph(17);
    let dashed = g.edges.iter().filter(|e| !e.incident).count();
    let witnesses = detect_noncatenary(&g);
    let pentagons = witnesses.iter().filter(|w| w.is_pentagon()).count();
    ensure(g.nodes.len() == 38, || format!("{} nodes", g.nodes.len()))?;
    ensure(dashed > 0, || "no non-incident edge".into())?;
    ensure(pentagons > 0, || "no pentagon".into())?;
    Ok(format!(
        "38 nodes, {} edges ({dashed} dashed), {pentagons} pentagons among {} non-catenary intervals",
        g.edges.len(),
        witnesses.len()
    ))
}

fn cover_oracle() -> Outcome {
    let mut total = 0;
    for n in 1..=12u32 {
        let ds = enumerate_diagrams(n);
        let len = n as i64 + 2;
        let hs: Vec<Vec<i64>> = ds
            .iter()
            .map(|d| (0..len).map(|m| hilbert_oracle(&svec(d), m)).collect())
            .collect();
        let lt = |x: &Vec<i64>, y: &Vec<i64>| x != y && x.iter().zip(y).all(|(a, b)| a <= b);
        let mut want = BTreeSet::new();
        for i in 0..hs.len() {
            for j in 0..hs.len() {
                if lt(&hs[i], &hs[j])
                    && !(0..hs.len()).any(|k| lt(&hs[i], &hs[k]) && lt(&hs[k], &hs[j]))
                {
                    want.insert((ds[i].to_string(), ds[j].to_string()));
                }
            }
        }
        let got: BTreeSet<(String, String)> = ds
            .iter()
            .flat_map(|d| covers_of(&d.hilbert_function()))
            .map(|p| (p.phi().diagram().to_string(), p.psi().diagram().to_string()))
            .collect();
        ensure(got == want, || {
            format!(
                "n={n}: missing {:?}, extra {:?}",
                want.difference(&got).collect::<Vec<_>>(),
                got.difference(&want).collect::<Vec<_>>()
            )
        })?;
        total += want.len();
    }
    Ok(format!("{total} cover relations, n<=12"))
}

/// Nonvanishing of `(s + t)^A (r + s)^B` mod `(r^cr, s^3, t^ct)`: some
/// monomial `r^i s^(B - i + A - k) t^k` survives all three caps.
fn short_move_product_oracle(cr: i64, ct: i64, a: i64, b: i64) -> bool {
    let i = b.min(cr - 1);
    let k = a.min(ct - 1);
    i >= 0 && k >= 0 && (b - i) + (a - k) <= 2
}

fn chow() -> Outcome {
    let mut checked = 0;
    for n in 1..=30 {
        for d in enumerate_diagrams(n) {
            let s = svec(&d);
            for p in covers_of(&d.hilbert_function()) {
                let (u, v) = (p.u() as i64, p.v() as i64);
                let betti = generic_betti(p.phi());
                if v < u + 1 || !condition_c_from(&betti, p.u(), p.v()) {
                    continue;
                }
                checked += 1;
                let ctx = || format!("{} -> {}", p.phi(), p.psi());
                ensure(verify_intersections(&p) == Ok(true), || {
                    format!("{}: product vanishes", ctx())
                })?;
                let (au, bu1, av2, bv3) = (
                    a_of(&s, u),
                    b_of(&s, u + 1),
                    a_of(&s, v + 2),
                    b_of(&s, v + 3),
                );
                let caps = [au as u32, 3, bv3 as u32];
                if v == u + 1 {
                    let prod = chow_product(
                        caps,
                        &[(LinearForm::S_T, av2 as u32), (LinearForm::R_S, bu1 as u32)],
                    );
                    ensure(
                        !prod.is_zero() && short_move_product_oracle(au, bv3, av2, bu1),
                        || format!("{}: short-move product", ctx()),
                    )?;
                } else {
                    // coefficient of r^B s^2 t^(A-1) in (r+s+t)(s+t)^A(r+s)^B is AB + A + C(A, 2)
                    let want = av2 * bu1 + av2 + av2 * (av2 - 1) / 2;
                    let prod = chow_product(
                        caps,
                        &[
                            (LinearForm::R_S_T, 1),
                            (LinearForm::S_T, av2 as u32),
                            (LinearForm::R_S, bu1 as u32),
                        ],
                    );
                    let got = prod.coeff([bu1 as u32, 2, (av2 - 1) as u32]);
                    ensure(want > 0 && got == want.into(), || {
                        format!("{}: coefficient {got}, want {want}", ctx())
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} condition-C pairs with v>=u+1, n<=30"))
}

fn dimension_anchors() -> Outcome {
    for n in 1..=30u32 {
        // generic diagram: 1, 2, 3, ... while points remain
        let mut gen = Vec::new();
        let mut left = n;
        let mut k = 1;
        while left > 0 {
            let x = k.min(left);
            gen.push(x);
            left -= x;
            k += 1;
        }
        let top = CastelnuovoDiagram::new(gen).map_err(|e| e.to_string())?;
        let top_h: Vec<i64> = (0..n as i64 + 2)
            .map(|m| hilbert_oracle(&svec(&top), m))
            .collect();
        for d in enumerate_diagrams(n) {
            let h: Vec<i64> = (0..n as i64 + 2)
                .map(|m| hilbert_oracle(&svec(&d), m))
                .collect();
            ensure(h.iter().zip(&top_h).all(|(x, y)| x <= y), || {
                format!("n={n}: {d} above {top}")
            })?;
        }
        let dim = stratum_dim(&top.hilbert_function());
        ensure(dim == 2 * n as u64, || {
            format!("n={n}: maximal stratum dim {dim}")
        })?;

        if n >= 3 {
            let line = CastelnuovoDiagram::new(vec![1; n as usize]).map_err(|e| e.to_string())?;
            let dim = stratum_dim(&line.hilbert_function());
            ensure(
                dim == n as u64 + 2 && dim_oracle(&svec(&line)) == n as i64 + 2,
                || format!("n={n}: collinear dim {dim}"),
            )?;
        }
    }
    Ok("maximal stratum 2n for n<=30; collinear n+2 for 3<=n<=30".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 enumeration", enumeration, Duration::from_secs(10)),
        ("2 B<=>C sweep", b_equiv_c, Duration::from_secs(300)),
        ("3 identity suite", identity_suite, Duration::from_secs(60)),
        (
            "4 known instances",
            known_instances,
            Duration::from_secs(10),
        ),
        ("5 n=17 graph", graph17, Duration::from_secs(10)),
        ("6 cover oracle", cover_oracle, Duration::from_secs(30)),
        ("7 Chow non-vanishing", chow, Duration::from_secs(60)),
        (
            "8 dimension anchors",
            dimension_anchors,
            Duration::from_secs(10),
        ),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
