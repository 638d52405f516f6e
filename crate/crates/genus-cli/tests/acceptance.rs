//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance` (or as part of the workspace
//! test run). The process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use genus_core::catalog::{self, ManifoldModel};
use genus_core::formulas::{self, Provenance};
use genus_core::genus;
use genus_core::lattice::{HomologyClass, IntersectionForm};
use genus_core::profile;
use genus_core::reduction;
use genus_core::surfaces;
use genus_core::sw;
use genus_core::bounds;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn cls(c: &[i64]) -> HomologyClass {
    HomologyClass::new(c.to_vec())
}

fn check_time(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed > limit {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:.2?}"))
    } else {
        Ok(())
    }
}

fn eval(model: &ManifoldModel, coords: &[i64]) -> Result<formulas::GenusResult, String> {
    genus::evaluate(model, &cls(coords)).map_err(|e| format!("evaluate {coords:?}: {e}"))
}

// 1. Closed-formula grids over |coordinates| <= 50, under 1 s per manifold.
fn criterion_1() -> Result<(), String> {
    let t = Instant::now();
    let cp2 = catalog::model_cp2();
    for d in -50i64..=50 {
        let expected = if d.abs() <= 2 { 0 } else { ((d.abs() - 1) * (d.abs() - 2) / 2) as u64 };
        let got = eval(&cp2, &[d])?;
        if !(got.exact && got.lower == expected) {
            return Err(format!("cp2 d={d}: got {got:?}, want {expected}"));
        }
    }
    check_time(t.elapsed(), Duration::from_secs(1), "cp2 grid")?;

    let t = Instant::now();
    let b1 = catalog::model_cp2_blowups(1).map_err(|e| e.to_string())?;
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            let (hi, lo) = (a.abs().max(b.abs()), a.abs().min(b.abs()));
            let expected = if hi == lo { 0 } else { (((hi - 1) * (hi - 2) - lo * (lo - 1)) / 2) as u64 };
            let got = eval(&b1, &[a, b])?;
            if !(got.exact && got.lower == expected) {
                return Err(format!("cp2x1 ({a},{b}): got {got:?}, want {expected}"));
            }
        }
    }
    check_time(t.elapsed(), Duration::from_secs(1), "cp2x1 grid")?;

    let t = Instant::now();
    let s = catalog::model_s2xs2();
    for u in -50i64..=50 {
        for v in -50i64..=50 {
            let expected = if u == 0 || v == 0 { 0 } else { ((u.abs() - 1) * (v.abs() - 1)) as u64 };
            let got = eval(&s, &[u, v])?;
            if !(got.exact && got.lower == expected) {
                return Err(format!("s2xs2 ({u},{v}): got {got:?}, want {expected}"));
            }
        }
    }
    check_time(t.elapsed(), Duration::from_secs(1), "s2xs2 grid")?;

    let t = Instant::now();
    let xn = catalog::model_xn(2).map_err(|e| e.to_string())?;
    for a in -50i64..=50 {
        for b in -50i64..=50 {
            let expected = if a == 0 && b == 0 { 0 } else { ((a.abs() + 1) * (b.abs() + 1)) as u64 };
            let got = eval(&xn, &[a, b])?;
            if !(got.exact && got.lower == expected) {
                return Err(format!("xn ({a},{b}): got {got:?}, want {expected}"));
            }
        }
    }
    check_time(t.elapsed(), Duration::from_secs(1), "xn grid")
}

// 2. The non-negative-square formula equals the arrangement oracle for
//    a <= 20, and the mis-coefficiented variant fails the comparison.
fn criterion_2() -> Result<(), String> {
    let t = Instant::now();
    let mut variant_fails = false;
    for a in 1u64..=20 {
        for b1 in 0..=a {
            for b2 in 0..=b1 {
                if b1 + b2 > a {
                    continue;
                }
                let oracle = surfaces::line_arrangement_genus(a, &[b1, b2])
                    .map_err(|e| e.to_string())?;
                let class = cls(&[a as i64, b1 as i64, b2 as i64]);
                let formula =
                    formulas::genus_cp2k_nonnegative(&class).map_err(|e| e.to_string())?;
                if oracle != formula {
                    return Err(format!("oracle {oracle} != formula {formula} at ({a},{b1},{b2})"));
                }
                if formulas::doubled_genus_polynomial_variant(a, &[b1, b2]) != 2 * oracle as i64 {
                    variant_fails = true;
                }
            }
        }
    }
    if !variant_fails {
        return Err("the miscoefficiented variant unexpectedly matches the oracle".into());
    }
    check_time(t.elapsed(), Duration::from_secs(10), "oracle grid")
}

// 3. Orbit soundness: canonical form lies in the reflection orbit, genus
//    is constant along the trace; coordinates <= 30, under 60 s.
fn criterion_3() -> Result<(), String> {
    let t = Instant::now();
    let model = catalog::model_cp2_blowups(2).map_err(|e| e.to_string())?;
    for a in 0i64..=30 {
        for b1 in 0i64..=30 {
            for b2 in 0i64..=b1 {
                if a * a - b1 * b1 - b2 * b2 < 0 {
                    continue;
                }
                let class = cls(&[a, b1, b2]);
                let (canon, trace) =
                    reduction::reduce_nonnegative(&class).map_err(|e| e.to_string())?;
                let g = formulas::genus_cp2k_nonnegative(&class).map_err(|e| e.to_string())?;
                let mut box_bound = class.max_abs_coord();
                for mid in trace.intermediates(&model.form).map_err(|e| e.to_string())? {
                    let gm = formulas::genus_cp2k_nonnegative(&mid).map_err(|e| e.to_string())?;
                    if gm != g {
                        return Err(format!("genus changed along trace of {class:?}: {g} -> {gm}"));
                    }
                    box_bound = box_bound.max(mid.max_abs_coord());
                }
                let orbit = reduction::orbit_bfs(
                    &model.form,
                    &model.reflection_spheres,
                    &class,
                    box_bound,
                )
                .map_err(|e| e.to_string())?;
                if !orbit.contains(&canon) {
                    return Err(format!("canonical {canon:?} not in orbit of {class:?}"));
                }
            }
        }
    }
    check_time(t.elapsed(), Duration::from_secs(60), "orbit soundness sweep")
}

// 4. Pythagorean triples up to 100 reduce to sphere classes.
fn criterion_4() -> Result<(), String> {
    for a in 1i64..=100 {
        for b1 in 0i64..=a {
            let rest = a * a - b1 * b1;
            let b2 = (rest as f64).sqrt() as i64;
            for b2 in [b2 - 1, b2, b2 + 1] {
                if b2 < 0 || b2 * b2 != rest {
                    continue;
                }
                let g = formulas::genus_cp2k_nonnegative(&cls(&[a, b1, b2]))
                    .map_err(|e| e.to_string())?;
                if g != 0 {
                    return Err(format!("({a},{b1},{b2}) has square 0 but genus {g}"));
                }
            }
        }
    }
    Ok(())
}

// 5. The five worked examples on the small exotic rank-3 fixture.
fn criterion_5() -> Result<(), String> {
    let ap = catalog::model_ap_family("ap", 1).map_err(|e| e.to_string())?;
    let cases: [(&[i64], u64, u64, Option<&str>); 5] = [
        (&[1, 1, 1], 6, 7, None),
        (&[1, 1, -1], 3, 5, Some("annulus-substitution")),
        (&[1, 2, 1], 9, 10, None),
        (&[2, 2, -2], 6, 6, None),
        (&[1, 0, 1], 3, 3, Some("braided-torus")),
    ];
    for (coords, lo, up, special) in cases {
        let r = eval(&ap, coords)?;
        if (r.lower, r.upper) != (lo, Some(up)) {
            return Err(format!("{coords:?}: got ({}, {:?}), want ({lo}, {up})", r.lower, r.upper));
        }
        if let Some(name) = special {
            let used = r.provenance.iter().any(|p| match p {
                Provenance::Construction(s) => s == name,
                _ => false,
            });
            if !used {
                return Err(format!("{coords:?}: upper bound should come from {name}"));
            }
        }
    }
    Ok(())
}

// 6. Invariant bookkeeping: surgery multiplies to +/-n; the twisted family
//    has identical genus tables but different invariant magnitudes.
fn criterion_6() -> Result<(), String> {
    for n in 1i64..=100 {
        if sw::surgery_sw(1, &[n]) != Ok(n) || sw::surgery_sw(-1, &[n]) != Ok(-n) {
            return Err(format!("surgery product wrong at n={n}"));
        }
        let classes = sw::xn_basic_classes(n).map_err(|e| e.to_string())?;
        let values: Vec<i64> = classes.iter().map(|b| b.sw).collect();
        if values != vec![n, -n] {
            return Err(format!("twisted family invariants at n={n}: {values:?}"));
        }
    }
    let x1 = catalog::model_xn(1).map_err(|e| e.to_string())?;
    let x5 = catalog::model_xn(5).map_err(|e| e.to_string())?;
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            let g1 = eval(&x1, &[a, b])?;
            let g5 = eval(&x5, &[a, b])?;
            if (g1.lower, g1.upper) != (g5.lower, g5.upper) {
                return Err(format!("tables differ at ({a},{b})"));
            }
        }
    }
    if x1.basic_classes[0].sw.abs() == x5.basic_classes[0].sw.abs() {
        return Err("family members should differ in invariant magnitude".into());
    }
    Ok(())
}

// 7. Profiles: (2,2,2) for the restricted K3 model; (2,...,2, ceil(n/2)+m)
//    for the knot-surgered models; pairwise distinct over the knot family.
fn criterion_7() -> Result<(), String> {
    let t = Instant::now();
    let k3 = catalog::model_k3();
    let mut e = genus::profile_evaluator(&k3);
    let p = profile::profile_search(&k3, 3, &mut e).map_err(|e| e.to_string())?;
    if p.tuple_lower() != vec![2, 2, 2] || !p.is_exact() {
        return Err(format!("k3 profile: {:?}", p.tuple_lower()));
    }
    for n in [2u32, 3] {
        for m in 1u32..=3 {
            let model = catalog::model_enk(n, m).map_err(|e| e.to_string())?;
            let mut e = genus::profile_evaluator(&model);
            let p = profile::profile_search(&model, 2, &mut e).map_err(|e| e.to_string())?;
            let mut want = vec![2u64; (2 * n - 2) as usize];
            want.push((n as u64 + 1) / 2 + m as u64);
            if p.tuple_lower() != want || !p.is_exact() {
                return Err(format!("profile n={n} m={m}: {:?}, want {want:?}", p.tuple_lower()));
            }
        }
    }
    let mut seen = Vec::new();
    for m in 1u32..=10 {
        let model = catalog::model_enk(2, m).map_err(|e| e.to_string())?;
        let mut e = genus::profile_evaluator(&model);
        let p = profile::profile_search(&model, 2, &mut e).map_err(|e| e.to_string())?;
        let tuple = p.tuple_lower();
        if seen.contains(&tuple) {
            return Err(format!("profiles collide at m={m}: {tuple:?}"));
        }
        seen.push(tuple);
    }
    check_time(t.elapsed(), Duration::from_secs(300), "profile computations")
}

// 8. Last profile entry of the log-transformed model: lower bound (p+3)/2.
fn criterion_8() -> Result<(), String> {
    for p in (1i64..=99).step_by(2) {
        let want = ((p + 3) / 2) as u64;
        let got = bounds::e2p_third_entry_lower(p).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("third-entry lower at p={p}: {got}, want {want}"));
        }
        let model = catalog::model_e2p(p).map_err(|e| e.to_string())?;
        let mut e = genus::profile_evaluator(&model);
        let prof = profile::profile_search(&model, 2, &mut e).map_err(|e| e.to_string())?;
        if prof.entries[2].lower != want {
            return Err(format!("profile entry at p={p}: {}, want {want}", prof.entries[2].lower));
        }
    }
    Ok(())
}

// 9. Characteristic-class genus bounds: the generated square -8n-1 family,
//    and exhaustive agreement of the sphere obstruction on a small box.
fn criterion_9() -> Result<(), String> {
    let form = IntersectionForm::diagonal(&[1, -1, -1]).map_err(|e| e.to_string())?;
    for n in 1i64..=20 {
        let a = cls(&[2 * n - 1, 2 * n + 1, 1]);
        let sq = form.square(&a).map_err(|e| e.to_string())?;
        if sq != -8 * n - 1 {
            return Err(format!("family member n={n} has square {sq}"));
        }
        if form.is_characteristic(&a) != Ok(true) {
            return Err(format!("family member n={n} not characteristic"));
        }
        let c = bounds::furuta_char_bound(&form, &a)
            .ok_or_else(|| format!("no furuta bound at n={n}"))?;
        let want = ((n + 1) / 2) as u64;
        if c.value < want {
            return Err(format!("furuta bound at n={n}: {}, want >= {want}", c.value));
        }
    }
    for a in -15i64..=15 {
        for b in -15i64..=15 {
            for c in -15i64..=15 {
                let v = cls(&[a, b, c]);
                let ch = form.is_characteristic(&v).map_err(|e| e.to_string())?;
                let sq = form.square(&v).map_err(|e| e.to_string())?;
                let obstruction = bounds::characteristic_sphere_obstruction(&form, &v);
                let expected = ch && sq < -1;
                if obstruction.is_some() != expected {
                    return Err(format!(
                        "sphere obstruction at ({a},{b},{c}): {:?}, expected {expected}",
                        obstruction
                    ));
                }
            }
        }
    }
    Ok(())
}

// 10. Property sweeps with no pinned numbers: reflection involutivity and
//     isometry on 10^4 random inputs, resolve permutation invariance,
//     fixture validation, shipped-file parity, JSON round-trip through the
//     CLI, and lower <= upper on the exotic fixtures.
fn criterion_10() -> Result<(), String> {
    let form = IntersectionForm::diagonal(&[1, -1, -1]).map_err(|e| e.to_string())?;
    let spheres: Vec<HomologyClass> =
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 1, 1]]
            .into_iter()
            .map(|c| cls(&c))
            .collect();
    let mut rng = StdRng::seed_from_u64(0x6d696e67656e7573);
    for _ in 0..10_000 {
        let a = cls(&[
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
        ]);
        let b = cls(&[
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
        ]);
        let s = &spheres[rng.gen_range(0..spheres.len())];
        let ra = form.reflect(s, &a).map_err(|e| e.to_string())?;
        let rra = form.reflect(s, &ra).map_err(|e| e.to_string())?;
        if rra != a {
            return Err(format!("reflection not involutive at {a:?} in {s:?}"));
        }
        let rb = form.reflect(s, &b).map_err(|e| e.to_string())?;
        if form.pairing(&ra, &rb) != form.pairing(&a, &b) {
            return Err(format!("reflection not an isometry at {a:?}, {b:?}"));
        }
    }

    // resolve bookkeeping is invariant under relabelling the components
    let mut cfg = surfaces::SurfaceConfiguration::new();
    let i0 = cfg.add_component("a", 2).map_err(|e| e.to_string())?;
    let i1 = cfg.add_component("b", 3).map_err(|e| e.to_string())?;
    let i2 = cfg.add_component("c", 1).map_err(|e| e.to_string())?;
    cfg.add_intersection(i0, i1, 2, true).map_err(|e| e.to_string())?;
    cfg.add_intersection(i1, i2, 1, true).map_err(|e| e.to_string())?;
    let mut cfg2 = surfaces::SurfaceConfiguration::new();
    let j0 = cfg2.add_component("c", 1).map_err(|e| e.to_string())?;
    let j1 = cfg2.add_component("b", 3).map_err(|e| e.to_string())?;
    let j2 = cfg2.add_component("a", 2).map_err(|e| e.to_string())?;
    cfg2.add_intersection(j1, j0, 1, true).map_err(|e| e.to_string())?;
    cfg2.add_intersection(j2, j1, 2, true).map_err(|e| e.to_string())?;
    if surfaces::resolve_genus(&cfg) != surfaces::resolve_genus(&cfg2) {
        return Err("resolve bookkeeping depends on component order".into());
    }

    // fixtures validate cleanly, and the shipped file matches the builtins
    let builtin = catalog::builtin_catalog();
    let violations = builtin.validate();
    if !violations.is_empty() {
        return Err(format!("fixture violations: {violations:?}"));
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/fixtures.cat");
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let parsed = catalog::parse(&text).map_err(|e| e.to_string())?;
    if parsed != builtin {
        return Err("shipped fixtures file is stale; regenerate with emit_fixtures".into());
    }

    // JSON round-trip through the CLI
    let out = Command::new(env!("CARGO_BIN_EXE_mingenus"))
        .args(["genus", "ap", "1", "1", "1", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(2) {
        return Err(format!("interval exit code: {:?}", out.status.code()));
    }
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    if v["schema_version"] != 1
        || v["manifold"] != "ap"
        || v["lower"] != 6
        || v["upper"] != 7
        || v["exact"] != false
    {
        return Err(format!("JSON fields wrong: {v}"));
    }

    // certified intervals stay ordered on the exotic fixtures
    let ap = catalog::model_ap_family("ap", 1).map_err(|e| e.to_string())?;
    let bk = catalog::model_bk_family("bk", 1).map_err(|e| e.to_string())?;
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            for z in -4i64..=4 {
                let r = eval(&ap, &[x, y, z])?;
                if let Some(u) = r.upper {
                    if r.lower > u {
                        return Err(format!("ap ({x},{y},{z}): lower {} > upper {u}", r.lower));
                    }
                }
                for w in -2i64..=2 {
                    let r = eval(&bk, &[x, y, z, w])?;
                    if let Some(u) = r.upper {
                        if r.lower > u {
                            return Err(format!(
                                "bk ({x},{y},{z},{w}): lower {} > upper {u}",
                                r.lower
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("criterion 1: closed-formula grids", criterion_1),
        ("criterion 2: arrangement oracle vs formula", criterion_2),
        ("criterion 3: orbit soundness of reduction", criterion_3),
        ("criterion 4: Pythagorean sphere classes", criterion_4),
        ("criterion 5: worked examples on the rank-3 exotic fixture", criterion_5),
        ("criterion 6: invariant bookkeeping across the twisted family", criterion_6),
        ("criterion 7: genus profiles", criterion_7),
        ("criterion 8: log-transform third-entry lower bound", criterion_8),
        ("criterion 9: characteristic-class bounds", criterion_9),
        ("criterion 10: property sweeps and round-trips", criterion_10),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS {name} [{:.2?}]", t.elapsed()),
            Err(e) => {
                println!("FAIL {name}: {e}");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} criteria failed");
        std::process::exit(1);
    }
}
