//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; only the wall-clock limits below are tolerances.

use std::process::Command;
use std::time::{Duration, Instant};

use hecke_core::degrees::consistency_report;
use hecke_core::finvec::{
    count_lagrangian, enumerate_subspaces, gaussian_binomial, gaussian_binomial_symbolic, PrimePowerField,
    DEFAULT_BUDGET,
};
use hecke_core::frobchar::{hecke_charpoly, langlands_oracle_check};
use hecke_core::hecke_gl::{
    dual, levi_expand, satake_phi, satake_psi, satake_t, t_generator_vars, GlContext, HeckeElement, Level, LeviTerm,
};
use hecke_core::hodge::{siegel_hodge, unitary_hodge};
use hecke_core::motive_inv::{enumerate_invariants, to_weights};
use hecke_core::poly::{int, LaurentPoly, VarSet};
use hecke_core::redsim::{census, ModelPoint};
use hecke_core::siegel::{hat_siegel, satake_phi as siegel_phi, satake_tp, SiegelContext};

const LIMIT_1: Duration = Duration::from_secs(5);
const LIMIT_2: Duration = Duration::from_secs(10);
const LIMIT_3: Duration = Duration::from_secs(30);
const LIMIT_4: Duration = Duration::from_secs(60);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(120);
const LIMIT_7: Duration = Duration::from_secs(5);
const LIMIT_8: Duration = Duration::from_secs(120);
const LIMIT_9: Duration = Duration::from_secs(5);
const LIMIT_10: Duration = Duration::from_secs(1);
const LIMIT_11: Duration = Duration::from_secs(5);
const LIMIT_12: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

/// `𝔤(k,l)` at `q` by the q-Pascal recursion.
fn gauss_pascal(k: usize, l: usize, q: u128) -> u128 {
    if k > l {
        return 0;
    }
    if k == 0 || k == l {
        return 1;
    }
    gauss_pascal(k - 1, l - 1, q) + q.pow(k as u32) * gauss_pascal(k, l - 1, q)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `P_{r,1}` coefficient of `X^{r−i}`: `(−1)^i Q^{i(i−1)/2} T_i`.
fn criterion_1() -> Check {
    for r in 1..=8usize {
        let p = hecke_charpoly(r, 1).map_err(|e| e.to_string())?;
        let vars = t_generator_vars(r);
        for i in 0..=r {
            let mut m = vec![0; r + 1];
            if i > 0 {
                m[i - 1] = 1;
            }
            m[r] = (i * (i.saturating_sub(1)) / 2) as i32;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let want = LaurentPoly::monomial(&vars, m, int(sign));
            if p.coeffs()[r - i] != want {
                return fail(format!("r={r}: coefficient of X^{} is {}, want {want}", r - i, p.coeffs()[r - i]));
            }
        }
    }
    Ok("P_{r,1} closed form for r=1..8".into())
}

fn criterion_2() -> Check {
    let mut count = 0;
    for r in 2..=6usize {
        let ctx = GlContext::new(r, 1, false).map_err(|e| e.to_string())?;
        for j in 0..=r {
            let got = levi_expand(&ctx, j).map_err(|e| e.to_string())?;
            let mut want = Vec::new();
            if j >= 1 {
                want.push(LeviTerm { q_exp: -((j - 1) as i32), psi: 1, phi: j - 1 });
            }
            if j < r {
                want.push(LeviTerm { q_exp: 0, psi: 0, phi: j });
            }
            if got != want {
                return fail(format!("r={r} j={j}: {got:?}"));
            }
        }
    }
    for r in 1..=6usize {
        for n in 0..=r {
            let ctx = GlContext::new(r, n, false).map_err(|e| e.to_string())?;
            for j in 0..=r {
                let mut sum = LaurentPoly::zero(ctx.vars());
                for t in levi_expand(&ctx, j).map_err(|e| e.to_string())? {
                    let psi = satake_psi(&ctx, t.psi).map_err(|e| e.to_string())?;
                    let phi = satake_phi(&ctx, t.phi).map_err(|e| e.to_string())?;
                    sum = &sum + &(psi.image() * phi.image()).mul_q_pow(t.q_exp);
                }
                if &sum != satake_t(&ctx, j).map_err(|e| e.to_string())?.image() {
                    return fail(format!("r={r} n={n} j={j}: summands do not add to T{j}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("n=1 table for r=2..6; {count} expansions sum to T_j"))
}

fn criterion_3() -> Check {
    let e = |x: hecke_core::Result<HeckeElement>| x.map_err(|e| e.to_string());
    let mut count = 0;
    for r in 1..=6usize {
        for n in 0..=r {
            let m = r - n;
            let ctx = GlContext::new(r, n, true).map_err(|e| e.to_string())?;
            for i in 0..=r {
                let t = e(satake_t(&ctx, i))?;
                if e(dual(&t))? != e(satake_t(&ctx, r - i))? || e(dual(&e(dual(&t))?))? != t {
                    return fail(format!("r={r} n={n}: dual on T{i}"));
                }
            }
            let fr = e(satake_psi(&ctx, n))?;
            let top = e(fr.mul(&e(satake_phi(&ctx, m))?))?;
            if top.image() != &LaurentPoly::q_pow(ctx.vars(), (n * m) as i32, int(1)) {
                return fail(format!("r={r} n={n}: fr*Phi{m} = {top}"));
            }
            for i in 0..=m {
                let phi = e(satake_phi(&ctx, i))?;
                let want = (fr.image() * e(satake_phi(&ctx, m - i))?.image()).mul_q_pow(-((n * (m - i)) as i32));
                let want = e(HeckeElement::new(&ctx, Level::T, want))?;
                if e(dual(&phi))?.image() != want.image() || e(dual(&e(dual(&phi))?))? != phi {
                    return fail(format!("r={r} n={n}: dual on Phi{i}"));
                }
            }
            for i in 0..=n {
                let psi = e(satake_psi(&ctx, i))?;
                let want = (e(satake_psi(&ctx, n - i))?.image() * e(satake_phi(&ctx, m))?.image())
                    .mul_q_pow(-(((n - i) * m) as i32));
                let want = e(HeckeElement::new(&ctx, Level::T, want))?;
                if e(dual(&psi))?.image() != want.image() || e(dual(&e(dual(&psi))?))? != psi {
                    return fail(format!("r={r} n={n}: dual on Psi{i}"));
                }
            }
            count += 1;
        }
    }
    for g in 1..=4usize {
        let ctx = SiegelContext::new(g).map_err(|e| e.to_string())?;
        let tp = satake_tp(&ctx).map_err(|e| e.to_string())?;
        if hat_siegel(&tp) != tp {
            return fail(format!("g={g}: hat(T_p) != T_p"));
        }
        for i in 0..=g {
            let phi = siegel_phi(&ctx, i).map_err(|e| e.to_string())?;
            let other = siegel_phi(&ctx, g - i).map_err(|e| e.to_string())?;
            if hat_siegel(&phi) != other || hat_siegel(&hat_siegel(&phi)) != phi {
                return fail(format!("g={g}: hat(Phi{i}) != Phi{}", g - i));
            }
        }
    }
    Ok(format!("{count} (r,n) pairs r<=6; Siegel g<=4"))
}

fn criterion_4() -> Check {
    let mut pairs = 0;
    for r in 1..=5usize {
        for n in 1..=r {
            let rep = langlands_oracle_check(r, n, 200, 0).map_err(|e| e.to_string())?;
            if !rep.passed() || rep.trials.len() != 200 {
                return fail(rep.summary());
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (r,n) pairs x 200 trials"))
}

fn criterion_5() -> Check {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for q in [2, 3] {
        for r in 1..=4 {
            for j in 0..=r {
                cases.push((r, j, q));
            }
        }
    }
    cases.extend([(5, 1, 2), (5, 2, 2)]);
    for &(r, j, q) in &cases {
        let field = PrimePowerField::prime(q).map_err(|e| e.to_string())?;
        let found = enumerate_subspaces(r, j, &field, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let mut distinct = found.clone();
        distinct.dedup();
        let want = gauss_pascal(j, r, q as u128);
        if found.len() as u128 != want || distinct.len() != found.len() {
            return fail(format!("r={r} j={j} q={q}: {} subspaces, want {want}", found.len()));
        }
        if gaussian_binomial(j as i64, r as i64, q as u64) != want.into() {
            return fail(format!("gaussian_binomial({j},{r}) at {q}"));
        }
    }
    Ok(format!("{} cases", cases.len()))
}

fn criterion_6() -> Check {
    let mut count = 0;
    for q in [2usize, 3] {
        let qq = q as u128;
        for r in 1..=4usize {
            for n in 0..=r {
                let field = PrimePowerField::prime(q).map_err(|e| e.to_string())?;
                let point = ModelPoint::ordinary(field, r, n).map_err(|e| e.to_string())?;
                for j in 0..=r {
                    let c = census(&point, j, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    let mut total = 0u128;
                    for row in &c.rows {
                        let i = row.i;
                        let classes = gauss_pascal(i, n, qq) * gauss_pascal(j - i, r - n, qq);
                        let fiber = qq.pow(((j - i) * (n - i)) as u32);
                        if row.classes != classes || row.fiber != Some(fiber) {
                            return fail(format!(
                                "r={r} n={n} j={j} q={q} i={i}: ({}, {:?}) want ({classes}, {fiber})",
                                row.classes, row.fiber
                            ));
                        }
                        if n == 1 && i == 1 && row.fiber_sizes.keys().any(|&s| s != 1) {
                            return fail(format!("r={r} j={j} q={q}: Frobenius fiber not 1"));
                        }
                        total += row.fiber_sizes.iter().map(|(s, k)| s * k).sum::<u128>();
                    }
                    if total != gauss_pascal(j, r, qq) || c.total != total {
                        return fail(format!("r={r} n={n} j={j} q={q}: partition total {total}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} censuses"))
}

fn criterion_7() -> Check {
    let qv = VarSet::q_only();
    let g = |k: usize, l: usize| gaussian_binomial_symbolic(&qv, k as i64, l as i64);
    for r in 0..=6usize {
        for n in 0..=r {
            for j in 0..=r {
                let mut rhs = LaurentPoly::zero(&qv);
                for i in 0..=j.min(n) {
                    if j - i <= r - n {
                        rhs = &rhs + &(&g(i, n) * &g(j - i, r - n)).mul_q_pow(((j - i) * (n - i)) as i32);
                    }
                }
                if rhs != g(j, r) {
                    return fail(format!("r={r} n={n} j={j}: {rhs} != {}", g(j, r)));
                }
            }
        }
        for j in 0..=r {
            for q in [2i64, 3, 5] {
                let v = g(j, r).evaluate_with(|_| Some(int(q))).map_err(|e| e.to_string())?;
                if v != int(gauss_pascal(j, r, q as u128) as i64) {
                    return fail(format!("symbolic g({j},{r}) at {q}"));
                }
            }
        }
    }
    Ok("r<=6, all n, j".into())
}

fn criterion_8() -> Check {
    for g in 1..=2usize {
        for p in [2usize, 3] {
            let pp = p as u128;
            let field = PrimePowerField::prime(p).map_err(|e| e.to_string())?;
            let found = count_lagrangian(g, &field, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let product: u128 = (1..=g as u32).map(|i| pp.pow(i) + 1).product();
            let degree_sum: u128 = (0..=g)
                .map(|i| gauss_pascal(i, g, pp) * pp.pow(((g + 1 - i) * (g - i) / 2) as u32))
                .sum();
            if found != product || found != degree_sum {
                return fail(format!("g={g} p={p}: {found}, {product}, {degree_sum}"));
            }
            let point = ModelPoint::siegel(field, g).map_err(|e| e.to_string())?;
            let c = census(&point, g, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            for row in &c.rows {
                let i = row.i;
                let fiber = pp.pow(((g + 1 - i) * (g - i) / 2) as u32);
                if row.classes != gauss_pascal(i, g, pp) || row.fiber != Some(fiber) {
                    return fail(format!("g={g} p={p} i={i}: ({}, {:?})", row.classes, row.fiber));
                }
            }
        }
    }
    Ok("g<=2, p in {2,3}".into())
}

fn criterion_9() -> Check {
    let mut checks = 0;
    for r in 1..=6usize {
        for n in 0..=r {
            let rep = consistency_report(r, n).map_err(|e| e.to_string())?;
            if let Some(f) = rep.failures().next() {
                return fail(format!("{}: {}", f.name, f.detail));
            }
            checks += rep.checks.len();
        }
    }
    Ok(format!("{checks} symbolic checks"))
}

fn subset_sums(m: usize, size: Option<usize>) -> Vec<usize> {
    (0u32..1 << m)
        .filter(|mask| size.is_none_or(|k| mask.count_ones() as usize == k))
        .map(|mask| (0..m).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).sum())
        .collect()
}

fn criterion_10() -> Check {
    for g in 1..=8usize {
        let h = siegel_hodge(g).map_err(|e| e.to_string())?;
        let mut want = vec![0u128; g * (g + 1) / 2 + 1];
        for s in subset_sums(g, None) {
            want[s] += 1;
        }
        let sym = h.entries.iter().eq(h.entries.iter().rev());
        if h.entries != want || h.total() != 1 << g || !sym {
            return fail(format!("siegel g={g}: {h}"));
        }
    }
    for r in 1..=10usize {
        for n in 1..=r {
            let h = unitary_hodge(r, n).map_err(|e| e.to_string())?;
            let mut want = vec![0u128; (r - n) * n + 1];
            for s in subset_sums(r, Some(n)) {
                want[s - n * (n + 1) / 2] += 1;
            }
            let sym = h.entries.iter().eq(h.entries.iter().rev());
            let mirror = n == r || unitary_hodge(r, r - n).map_err(|e| e.to_string())?.entries == h.entries;
            if h.entries != want || h.total() != binomial(r, n) || !sym || !mirror {
                return fail(format!("unitary r={r} n={n}: {h}"));
            }
        }
    }
    let g2 = siegel_hodge(2).map_err(|e| e.to_string())?.entries;
    let u42 = unitary_hodge(4, 2).map_err(|e| e.to_string())?.entries;
    if g2 != vec![1, 1, 1, 1] || u42 != vec![1, 1, 2, 1, 1] {
        return fail(format!("examples {g2:?} {u42:?}"));
    }
    Ok("g<=8, r<=10".into())
}

fn criterion_11() -> Check {
    for r in 1..=10usize {
        for n in 0..=r {
            let invs = enumerate_invariants(r, n, 1).map_err(|e| e.to_string())?;
            let ks: Vec<Vec<usize>> = invs.iter().map(|i| i.k.clone()).collect();
            if ks != vec![vec![r - n, n]] {
                return fail(format!("r={r} n={n}: {ks:?}"));
            }
        }
    }
    let mut tuples = 0;
    for r in 1..=8usize {
        for n in 0..=3 * r {
            for inv in enumerate_invariants(r, n, 3).map_err(|e| e.to_string())? {
                let w: i64 = to_weights(&inv).map_err(|e| e.to_string())?.iter().sum();
                let r_sum: usize = inv.k.iter().sum();
                let n_sum: usize = inv.k.iter().enumerate().map(|(i, k)| i * k).sum();
                if w != -(n as i64) || r_sum != r || n_sum != n {
                    return fail(format!("{inv}: weight sum {w}"));
                }
                tuples += 1;
            }
        }
    }
    Ok(format!("nu=1 for r<=10; {tuples} tuples with nu<=3, r<=8"))
}

fn criterion_12() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hecke"))
            .args(["verify", "--suite", "all", "--max-r", "5"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return fail(format!("exit status {:?} / {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return fail("reports differ between runs");
    }
    let lines = String::from_utf8_lossy(&a.stdout).lines().count();
    Ok(format!("{lines} identical report lines"))
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 12] = [
        ("hecke polynomial closed form", criterion_1, LIMIT_1),
        ("levi expansion", criterion_2, LIMIT_2),
        ("duality suite", criterion_3, LIMIT_3),
        ("langlands oracle", criterion_4, LIMIT_4),
        ("grassmannian oracle", criterion_5, LIMIT_5),
        ("reduction census", criterion_6, LIMIT_6),
        ("q-vandermonde", criterion_7, LIMIT_7),
        ("siegel geometry", criterion_8, LIMIT_8),
        ("degrees consistency", criterion_9, LIMIT_9),
        ("hodge vectors", criterion_10, LIMIT_10),
        ("nilpotent invariants", criterion_11, LIMIT_11),
        ("determinism", criterion_12, LIMIT_12),
    ];
    let mut failed = 0;
    for (k, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2} {name}: {detail} ({elapsed:.2?})",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
