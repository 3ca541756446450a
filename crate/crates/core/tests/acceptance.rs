//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinab::catalog::{family, Catalog};
use spinab::clifford::{ad_fixed_dim, CliffElt};
use spinab::codes::{self, BinCode};
use spinab::fingrp::{closure, pairing_rank_obstruction, Ambient, GrpElt, Verdict, DEFAULT_CAP};
use spinab::octonion::derivation_basis;
use spinab::verify::{verify, Config, Status};
use spinab::CycloElt;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn same_code(a: &BinCode, b: &BinCode) -> bool {
    a.n() == b.n() && codes::canonical_form(a) == codes::canonical_form(b)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn nonexistence() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in [2, 3, 4, 5, 6, 10] {
        for allones in [false, true] {
            let (classes, dt) = timed(|| codes::enumerate(n, allones));
            let classes = classes.map_err(e)?;
            ensure(classes.is_empty(), format!("n = {n}, all-ones = {allones}: {} classes", classes.len()))?;
            ensure(dt < Duration::from_secs(1), format!("n = {n} took {dt:?}"))?;
            slowest = slowest.max(dt);
        }
    }
    Ok(format!("0 classes for n = 2..6, 10; slowest {slowest:?}"))
}

fn uniqueness(cat: &Catalog) -> Outcome {
    let mut notes = Vec::new();
    for (n, allones, id, order) in [(7, false, "spin.F7", 16), (8, true, "spin.F8", 32)] {
        let classes = codes::enumerate(n, allones).map_err(e)?;
        ensure(classes.len() == 1, format!("n = {n}: {} classes", classes.len()))?;
        let entry = cat.get(id).map_err(e)?;
        ensure(same_code(&classes[0], &entry.code().map_err(e)?), format!("n = {n}: class is not the {id} code"))?;
        let f = codes::realize(&classes[0]).map_err(e)?;
        ensure(f.order() == order, format!("{id}: order {}", f.order()))?;
        ensure(entry.group(DEFAULT_CAP).map_err(e)?.order() == order, format!("{id}: catalog order"))?;
        let d = ad_fixed_dim(&codes::realize_generators(&classes[0]), n as u32).map_err(e)?;
        ensure(d == 0, format!("{id}: fixed dim {d}"))?;
        notes.push(format!("n={n}: 1 class, |F|={order}"));
    }
    for (n, id) in [(12, "spin.F12"), (14, "spin.F14")] {
        let (classes, dt) = timed(|| codes::enumerate(n, true));
        let classes = classes.map_err(e)?;
        ensure(dt < Duration::from_secs(300), format!("n = {n} took {dt:?}"))?;
        ensure(classes.iter().all(codes::trichotomy_holds), format!("n = {n}: trichotomy fails"))?;
        let code = cat.get(id).map_err(e)?.code().map_err(e)?;
        ensure(classes.iter().any(|c| same_code(c, &code)), format!("n = {n}: {id} code missing"))?;
        notes.push(format!("n={n}: {} class(es) in {:.2}s", classes.len(), dt.as_secs_f64()));
    }
    Ok(notes.join("; "))
}

fn fixed_dims(cat: &Catalog) -> Outcome {
    let zero = [
        "spin.F7", "spin.F8", "spin.F12", "spin.F14", "halfspin.F1", "halfspin.F2", "halfspin.F3", "f4.F1", "f4.F2", "g2.F1", "d4.F13", "d4.F14",
        "d4.F15", "d4.F16", "d4.F17", "d4.F18", "d4.F19", "d4.F20", "d4.F21",
    ];
    for id in zero {
        let d = cat.get(id).map_err(e)?.fixed_dim().map_err(e)?;
        ensure(d == 0, format!("{id}: {d}"))?;
    }
    for n in [16, 22, 26] {
        let d = family(n).map_err(e)?.fixed_dim().map_err(e)?;
        ensure(d == 0, format!("family n = {n}: {d}"))?;
    }
    let k = cat.get("spin.K").map_err(e)?.fixed_dim().map_err(e)?;
    ensure(k == 6, format!("K: {k}"))?;
    let der = derivation_basis().len();
    ensure(der == 14, format!("dim Der(O) = {der}"))?;
    Ok(format!("{} entries and 3 family members at 0, K at 6, dim Der(O) = 14", zero.len()))
}

fn rank_bounds() -> Outcome {
    let mut total = 0;
    for n in 2..=14 {
        for allones in [false, true] {
            for c in codes::enumerate(n, allones).map_err(e)? {
                ensure(codes::rank_bounds_check(&c), format!("fails for {c}"))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} enumerated classes checked"))
}

fn obstructions(cat: &Catalog) -> Outcome {
    let mut notes = Vec::new();
    for id in ["spin10.obstruction", "f4.A3A1"] {
        let entry = cat.get(id).map_err(e)?;
        let f = entry.group(DEFAULT_CAP).map_err(e)?;
        let r = pairing_rank_obstruction(&f, &entry.projections).map_err(e)?;
        ensure(r.verdict == Verdict::Contradiction, format!("{id}: {:?}", r.verdict))?;
        let ranks: Vec<String> = r.components.iter().map(|c| c.1.to_string()).collect();
        notes.push(format!("{id} ranks {}", ranks.join("/")));
    }
    Ok(notes.join("; "))
}

fn weyl(cat: &Catalog) -> Outcome {
    let mut notes = Vec::new();
    for (id, v) in [("spin.F7", 1344u128), ("g2.F1", 168), ("d4.F22", 40320)] {
        let b = cat.get(id).map_err(e)?.weyl_bounds(DEFAULT_CAP).map_err(e)?;
        ensure(b.exact() == Some(v), format!("{id}: {b}"))?;
        notes.push(format!("{id} {v}"));
    }
    let mut lower = Vec::new();
    for (id, v) in [("spin.F12", 737280u128), ("spin.F14", 3612672), ("halfspin.F1", 12288)] {
        let b = cat.get(id).map_err(e)?.weyl_bounds(DEFAULT_CAP).map_err(e)?;
        ensure(b.lower.order == v, format!("{id}: lower {}", b.lower.order))?;
        notes.push(format!("{id} lower {v} upper {}", b.upper));
        lower.push(b.lower.order);
    }
    let w7 = cat.get("spin.F7").map_err(e)?.weyl_bounds(DEFAULT_CAP).map_err(e)?.lower.order;
    ensure(lower[1] == 2 * w7 * w7, "F14 Weyl group is not 2 |W(F7)|^2")?;
    let b = cat.get("d4.F20").map_err(e)?.weyl_bounds(DEFAULT_CAP).map_err(e)?;
    let inside: Vec<u128> = [256u128, 128].into_iter().filter(|&v| b.lower.order <= v && v <= b.upper).collect();
    ensure(!inside.is_empty(), format!("F20 interval {b} misses 2^7 and 2^8"))?;
    notes.push(format!("F20 in {b} contains {inside:?} (flagged: statement and proof differ)"));
    Ok(notes.join("; "))
}

fn pipeline(id: &str, require: &[&str]) -> Result<usize, String> {
    let r = verify(id, &Config::default()).map_err(e)?;
    for c in &r.checks {
        ensure(c.status != Status::Fail, format!("{}: expected {}, got {}", c.check, c.expected, c.computed))?;
    }
    for want in require {
        let hit = r.checks.iter().any(|c| c.check.contains(want) && c.status == Status::Pass);
        ensure(hit, format!("{id}: no passing check {want:?}"))?;
    }
    Ok(r.checks.len())
}

fn halfspin() -> Outcome {
    let n = pipeline(
        "halfspin",
        &[
            "delta^2 = c",
            "order of [delta]",
            "order of [e1 e2 e3 e4 e5 e6]",
            "y x1 y^-1",
            "y x2 y^-1",
            "profiles pairwise distinct",
            "halfspin.F1 order",
            "halfspin.F2 lifted-order",
            "halfspin.F3 lifted-order",
        ],
    )?;
    Ok(format!("{n} checks; |F1| = 64 in Spin(12)/<c>, |F2| = 128 and |F3| = 256 as lifts"))
}

fn root_data() -> Outcome {
    let a = pipeline("f4-theta", &["centralizer"])?;
    let b = pipeline("root-closures", &["A2L+A2S", "C2+2A1", "A1L+A1S"])?;
    let (c, dt) = timed(|| pipeline("levi", &["G2", "F4", "B3", "B7", "D4"]));
    let c = c?;
    ensure(dt < Duration::from_secs(10), format!("levi checks took {dt:?}"))?;
    Ok(format!("{} checks, Levi checks in {:.2}s", a + b + c, dt.as_secs_f64()))
}

fn d4() -> Outcome {
    let a = pipeline("d4-fusion", &["relabel(profile(F19))", "relabel(profile(F17))", "coincident"])?;
    let r = verify("d4-catalog", &Config::default()).map_err(e)?;
    for id in ["d4.F15 squares", "d4.F18 squares"] {
        ensure(r.checks.iter().any(|c| c.check == id && c.status == Status::Pass), format!("{id} does not pass"))?;
    }
    ensure(r.checks.iter().all(|c| c.status != Status::Fail), "d4 catalog claim fails")?;
    Ok(format!("{} checks; only F14~F17 and F15~F18 share (|F|, #involutions)", a + r.checks.len()))
}

fn rand_cyclo(rng: &mut ChaCha8Rng) -> CycloElt {
    let c: Vec<(i128, i128)> = (0..16).map(|_| (rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect();
    CycloElt::from_coeffs(&c)
}

fn rand_cliff(rng: &mut ChaCha8Rng, n: u32) -> CliffElt {
    let terms: Vec<(u32, CycloElt)> = (0..4).map(|_| (rng.gen_range(0..1u32 << n), CycloElt::from_int(rng.gen_range(-2..=2)))).collect();
    CliffElt::from_terms(n, terms)
}

fn rand_spin(rng: &mut ChaCha8Rng, n: u32) -> CliffElt {
    let mut g = CliffElt::one(n);
    for _ in 0..rng.gen_range(1..6) {
        let i = rng.gen_range(1..=n);
        let j = (i % n) + 1;
        let x = match rng.gen_range(0..3) {
            0 => CliffElt::r(n, i, j),
            1 => CliffElt::rot(n, i, j, rng.gen_range(0..16)),
            _ => &CliffElt::blade_of(n, &[i]) * &CliffElt::blade_of(n, &[j]),
        };
        g = &g * &x;
    }
    g
}

fn properties(cat: &Catalog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (a, b, c) = (rand_cyclo(&mut rng), rand_cyclo(&mut rng), rand_cyclo(&mut rng));
        ensure(&(&a * &b) * &c == &a * &(&b * &c), "cyclo associativity")?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "cyclo distributivity")?;
        ensure(&a + &b == &b + &a && &a * &b == &b * &a, "cyclo commutativity")?;
        if !a.is_zero() {
            ensure((&a * &a.inv().map_err(e)?).is_one(), "cyclo inverse")?;
        }
    }
    for _ in 0..200 {
        let (a, b, c) = (rand_cliff(&mut rng, 6), rand_cliff(&mut rng, 6), rand_cliff(&mut rng, 6));
        ensure(&(&a * &b) * &c == &a * &(&b * &c), "Clifford associativity")?;
        ensure((&a * &b).reverse() == &b.reverse() * &a.reverse(), "reversion is an antiautomorphism")?;
    }
    for _ in 0..200 {
        let (g, h) = (rand_spin(&mut rng, 5), rand_spin(&mut rng, 5));
        let lhs = (&g * &h).vector_rep().map_err(e)?;
        ensure(lhs == g.vector_rep().map_err(e)?.mul(&h.vector_rep().map_err(e)?), "vector_rep is multiplicative")?;
    }
    // kernel on a finite subgroup of Spin(3) of order 48
    let gens: Vec<GrpElt> = [CliffElt::r(3, 1, 2), CliffElt::r(3, 2, 3)].into_iter().map(GrpElt::Cliff).collect();
    let f = closure(&Ambient::Spin(3), &gens, &[], DEFAULT_CAP).map_err(e)?;
    let kernel: Vec<&GrpElt> = f.elements().iter().filter(|g| g.as_cliff().unwrap().vector_rep().unwrap().is_identity()).collect();
    ensure(kernel.len() == 2 && kernel.iter().all(|g| g.as_scalar().is_some()), format!("kernel has {} elements", kernel.len()))?;

    let c12 = cat.get("spin.F12").map_err(e)?.code().map_err(e)?;
    let canon = codes::canonical_form(&c12);
    let mut p: Vec<usize> = (0..12).collect();
    for _ in 0..1000 {
        p.shuffle(&mut rng);
        ensure(codes::canonical_form(&c12.permute(&p)) == canon, "canonical form not invariant")?;
    }

    for id in ["spin.F7", "halfspin.F1"] {
        let entry = cat.get(id).map_err(e)?;
        let f = entry.group(DEFAULT_CAP).map_err(e)?;
        let Ambient::Spin(n) = f.ambient().clone() else { unreachable!() };
        for _ in 0..10 {
            let h = GrpElt::Cliff(rand_spin(&mut rng, n));
            let conj = |x: &GrpElt| x.conj_by(&h).map_err(e);
            let gens: Vec<GrpElt> = entry.generators().map_err(e)?.iter().map(conj).collect::<Result<_, _>>()?;
            let z: Vec<GrpElt> = entry.center_elements().map_err(e)?.iter().map(conj).collect::<Result<_, _>>()?;
            let g = closure(f.ambient(), &gens, &z, DEFAULT_CAP).map_err(e)?;
            ensure(g.profile() == f.profile(), format!("{id}: profile changes under conjugation"))?;
        }
    }
    Ok("field, Clifford, vector_rep, 1000 canonical-form permutations, profile conjugation".into())
}

fn main() -> ExitCode {
    let cat = Catalog::shipped();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("non-existence counts", Box::new(nonexistence)),
        ("uniqueness counts", Box::new(|| uniqueness(&cat))),
        ("fixed subalgebra certificates", Box::new(|| fixed_dims(&cat))),
        ("rank bounds", Box::new(rank_bounds)),
        ("pairing obstructions", Box::new(|| obstructions(&cat))),
        ("Weyl group bounds", Box::new(|| weyl(&cat))),
        ("half-spin relations", Box::new(halfspin)),
        ("root data", Box::new(root_data)),
        ("D4 fusion invariants", Box::new(d4)),
        ("property suites", Box::new(|| properties(&cat))),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (out, dt) = timed(f);
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({:.2}s): {detail}", k + 1, dt.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({:.2}s): {why}", k + 1, dt.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
