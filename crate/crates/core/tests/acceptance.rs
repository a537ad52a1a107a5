//! End-to-end acceptance checks. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and exits nonzero if any fails.

use std::time::{Duration, Instant};

use longknot::catalog::Catalog;
use longknot::diagram::{braid_components, random_move_sequence};
use longknot::heisenberg::{table1, DEFAULT_STEP_CAP};
use longknot::hopf::{conjecture_check, r_matrix, standard_module, vect_datum, TruncElem};
use longknot::knotgroup::{alexander, count_homs, WirtingerData};
use longknot::laurent::{q, Q};
use longknot::report::{cmd_table1, Table1Profile};
use longknot::rt::{derive_tildes, invariant, Backend, RMatrixDatum, RelCategory, SpanCategory, VectCategory};
use longknot::setcat::{fiber_count, rack_from_pointed_group, rmatrix_from_rack, FiniteGroup, PointedGroup, RackTable};
use longknot::sparse::{Coefficient, SparseMorphism, TensorObject};
use longknot::{Execution, MorseWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXEC: Execution = Execution::Parallel;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn table_reproduction(catalog: &Catalog) -> Outcome {
    let start = Instant::now();
    let core = match cmd_table1(catalog, Table1Profile::Core, DEFAULT_STEP_CAP, EXEC) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("core profile: {e}")),
    };
    let core_time = start.elapsed();
    let ext = match cmd_table1(catalog, Table1Profile::Extended, DEFAULT_STEP_CAP, EXEC) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("extended profile: {e}")),
    };
    let bad: Vec<String> = ext.rows.iter().filter(|l| !l.ideal_match).map(|l| format!("{} gave ({})", l.knot, l.ideal_computed.join(", "))).collect();
    let pass = core.all_match && core.rows.len() == 5 && bad.is_empty() && ext.rows.len() == 11 && core_time < Duration::from_secs(600);
    outcome(pass, format!("core {}/5 in {}, extended {}/11 ideals equal{}", core.rows.iter().filter(|l| l.ideal_match && l.alexander_match).count(), secs(core_time), ext.rows.len() - bad.len(), if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }))
}

fn alexander_column(catalog: &Catalog) -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for row in table1() {
        let start = Instant::now();
        let ok = catalog
            .get(&row.knot)
            .ok()
            .and_then(|e| e.diagram().ok())
            .and_then(|d| WirtingerData::of_knot(&d).ok())
            .and_then(|w| alexander(&w).ok())
            .is_some_and(|p| p.eq_up_to_units(&row.alexander));
        slowest = slowest.max(start.elapsed());
        if !ok {
            bad.push(row.knot);
        }
    }
    outcome(bad.is_empty() && slowest < Duration::from_secs(1), format!("11 rows, slowest {}{}", secs(slowest), if bad.is_empty() { String::new() } else { format!(", wrong: {bad:?}") }))
}

fn homomorphism_oracle(catalog: &Catalog) -> Outcome {
    let start = Instant::now();
    let groups = [("S3", "(1 2)"), ("S4", "(1 2)"), ("D4", "s"), ("Z5", "1")];
    let knots: Vec<_> = catalog.entries().iter().filter(|e| e.crossing_number().is_some_and(|c| c <= 8)).collect();
    let mut cases = 0;
    let mut bad = Vec::new();
    for (g, mu) in groups {
        let pg = PointedGroup::new(FiniteGroup::parse_spec(g).unwrap(), mu).unwrap();
        let cat = SpanCategory::new(EXEC);
        let datum = derive_tildes(&cat, &rmatrix_from_rack::<u64>(&rack_from_pointed_group(&pg)).unwrap()).unwrap();
        let e = pg.group.identity();
        for k in &knots {
            let word = k.diagram().unwrap();
            let j = invariant(&cat, &datum, &word).unwrap();
            let homs = count_homs(&WirtingerData::of_knot(&word).unwrap(), &pg.group, pg.mu, 0, EXEC);
            let fibers: Vec<u64> = (0..pg.group.order()).map(|l| fiber_count(&j, e, l).unwrap()).collect();
            cases += 1;
            if fibers != homs.per_lambda {
                bad.push(format!("{} over {g}", k.name));
            }
        }
    }
    let t = start.elapsed();
    outcome(bad.is_empty() && t < Duration::from_secs(300), format!("{cases} (knot, group) pairs, every λ, in {}{}", secs(t), if bad.is_empty() { String::new() } else { format!(", mismatched: {bad:?}") }))
}

fn moves_preserve<B: Backend>(cat: &B, datum: &RMatrixDatum<B>, knots: &[(String, MorseWord)], seeds: u64) -> Vec<String>
where
    B::Morphism: Send + Sync,
    B::Object: Sync,
{
    let mut bad = Vec::new();
    for (name, k) in knots {
        let base = invariant(cat, datum, k).unwrap();
        let seeds: Vec<u64> = (0..seeds).collect();
        let failures = EXEC.map(&seeds, |&seed| {
            let len = (seed % 21) as usize;
            let moved = random_move_sequence(k, seed, len);
            let ok = invariant(cat, datum, &moved).is_ok_and(|j| cat.equal(&j, &base));
            (!ok).then_some(seed)
        });
        bad.extend(failures.into_iter().flatten().map(|s| format!("{name} seed {s}")));
    }
    bad
}

fn reidemeister_suite(catalog: &Catalog) -> Outcome {
    let start = Instant::now();
    let get = |n: &str| (n.to_string(), catalog.get(n).unwrap().diagram().unwrap());
    let small: Vec<_> = ["unknot", "3_1", "4_1"].iter().map(|n| get(n)).collect();
    let mut set_knots = small.clone();
    set_knots.extend(["5_2", "6_2"].iter().map(|n| get(n)));
    let pg = PointedGroup::new(FiniteGroup::parse_spec("S3").unwrap(), "(1 2)").unwrap();
    let rack = rack_from_pointed_group(&pg);
    let rel = RelCategory::new(EXEC);
    let span = SpanCategory::new(EXEC);
    let vect = VectCategory::new(EXEC);
    let mut bad = moves_preserve(&rel, &derive_tildes(&rel, &rmatrix_from_rack::<bool>(&rack).unwrap()).unwrap(), &set_knots, 100);
    bad.extend(moves_preserve(&span, &derive_tildes(&span, &rmatrix_from_rack::<u64>(&rack).unwrap()).unwrap(), &set_knots, 100));
    let v = standard_module(3, 3, q(0)).unwrap();
    bad.extend(moves_preserve(&vect, &vect_datum(&v, EXEC).unwrap(), &small, 100));
    outcome(
        bad.is_empty(),
        format!("Rel, Span over S3 on 5 knots and V(3,3) on 3 knots, 100 sequences each, in {}{}", secs(start.elapsed()), if bad.is_empty() { String::new() } else { format!(", changed: {bad:?}") }),
    )
}

fn yang_baxter<C: Coefficient>(r: &SparseMorphism<C>, x: &TensorObject) -> bool {
    let id = SparseMorphism::identity(x);
    let r12 = r.tensor(&id);
    let r23 = id.tensor(r);
    r12.after(&r23).after(&r12) == r23.after(&r12).after(&r23)
}

fn rack_block<C: Coefficient>(cat: &longknot::rt::SparseCategory<C>, rack: &RackTable) -> Vec<&'static str> {
    let d = derive_tildes(cat, &rmatrix_from_rack::<C>(rack).unwrap()).unwrap();
    let s_prime = rack.graph::<C>(|x, y| rack.s_prime(x, y));
    let s = rack.graph::<C>(|x, y| rack.s(x, y));
    let r_prime = rack.graph::<C>(|x, y| rack.r_prime(x, y));
    let mut bad = Vec::new();
    let checks = [
        ("r⁻¹ = r̃ = s′", d.r_inv == s_prime && d.r_t == s_prime),
        ("tilde r⁻¹ = r̃̃ = s", d.r_inv_t == s && d.r_tt == s),
        ("(tilde r⁻¹)⁻¹ = r̃̃⁻¹ = r′", d.r_inv_t_inv == r_prime && d.r_inv_tt == r_prime),
        ("r̃̃⁻¹ inverts r̃̃", d.r_tt.invert_permutation().as_ref() == Some(&d.r_inv_tt)),
        ("Yang–Baxter", yang_baxter(&d.r, &TensorObject::atom(rack.size))),
    ];
    for (name, ok) in checks {
        if !ok {
            bad.push(name);
        }
    }
    bad.extend(d.identity_checks(cat).into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n));
    bad
}

fn structure_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut racks = 0;
    for (g, mu) in [("S3", "(1 2)"), ("S3", "(1 2 3)"), ("S4", "(1 2)"), ("S4", "(1 2 3)"), ("D4", "s"), ("D5", "s"), ("Z5", "1"), ("Z6", "2")] {
        let pg = PointedGroup::new(FiniteGroup::parse_spec(g).unwrap(), mu).unwrap();
        let rack = rack_from_pointed_group(&pg);
        racks += 1;
        if let Err(e) = rack.verify() {
            bad.push(format!("{g} {mu}: {e}"));
        }
        for n in rack_block(&SpanCategory::new(EXEC), &rack) {
            bad.push(format!("{g} {mu} span: {n}"));
        }
        for n in rack_block(&RelCategory::new(EXEC), &rack) {
            bad.push(format!("{g} {mu} rel: {n}"));
        }
    }
    let mut modules = 0;
    for (n, d) in [(1, 1), (3, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3)] {
        for c in [q(0), q(1), Q::new(1.into(), 2.into())] {
            let v = standard_module(n, d, c.clone()).unwrap();
            modules += 1;
            let tag = format!("V({n},{d}) c={c}");
            bad.extend(v.verify_relations().into_iter().filter(|(_, ok)| !ok).map(|(r, _)| format!("{tag}: {r}")));
            if !yang_baxter(&r_matrix(&v).unwrap(), &v.object()) {
                bad.push(format!("{tag}: Yang–Baxter"));
            }
            let vect = VectCategory::new(EXEC);
            let datum = vect_datum(&v, EXEC).unwrap();
            bad.extend(datum.identity_checks(&vect).into_iter().filter(|(_, ok)| !ok).map(|(r, _)| format!("{tag}: {r}")));
            if datum.r_tt.invert().as_ref() != Some(&datum.r_inv_tt) {
                bad.push(format!("{tag}: r̃̃⁻¹ = (r̃̃)⁻¹"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{racks} racks in Rel and Span, {modules} modules{}", if bad.is_empty() { String::new() } else { format!(", failing: {bad:?}") }))
}

fn trefoil(catalog: &Catalog) -> Outcome {
    let start = Instant::now();
    let w = catalog.get("3_1").unwrap().diagram().unwrap();
    match conjecture_check(&w, 6, 6, q(0), EXEC) {
        Ok(r) => {
            let want = TruncElem { coeffs: [1, 0, -1, 1, 0, -1].map(q).to_vec() };
            let t = start.elapsed();
            let pass = r.scalar && r.equal && r.predicted == want && t < Duration::from_secs(60);
            outcome(pass, format!("J = {} (Δ⁻¹ = {}), scalar {}, in {}", r.computed, r.predicted, r.scalar, secs(t)))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

/// Property part: scalar and independent of (d, c). Agreement with `Δ⁻¹`
/// is recorded in the detail, not required.
fn conjecture_harness(catalog: &Catalog) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for k in ["4_1", "6_2"] {
        let w = catalog.get(k).unwrap().diagram().unwrap();
        let mut series: Vec<TruncElem> = Vec::new();
        let mut agree = true;
        for d in [4, 6] {
            for c in [0, 1] {
                match conjecture_check(&w, 6, d, q(c), EXEC) {
                    Ok(r) => {
                        pass &= r.scalar;
                        agree &= r.equal;
                        series.push(r.computed);
                    }
                    Err(e) => {
                        pass = false;
                        notes.push(format!("{k} d={d} c={c}: {e}"));
                    }
                }
            }
        }
        let common = series.iter().map(|s| s.order()).min().unwrap_or(0);
        let independent = series.windows(2).all(|p| p[0].truncate(common) == p[1].truncate(common));
        pass &= independent && series.len() == 4;
        notes.push(format!(
            "{k}: {}, independent {independent}, Δ⁻¹ agreement {}",
            series.last().map(|s| s.to_string()).unwrap_or_default(),
            if agree { "yes" } else { "NO (flagged)" }
        ));
    }
    outcome(pass, notes.join("; "))
}

fn writhe_suite(catalog: &Catalog) -> Outcome {
    let mut bad = Vec::new();
    for n in -5..=5 {
        if MorseWord::xi(n).writhe() != 2 * n {
            bad.push(format!("w(ξ^{n})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bases: Vec<MorseWord> = catalog.entries().iter().map(|e| e.diagram().unwrap()).collect();
    let mut fuzzed = Vec::with_capacity(1000);
    while fuzzed.len() < 500 {
        let strands = rng.gen_range(1..=4usize);
        let len = rng.gen_range(0..=9usize);
        let mut word = Vec::new();
        if strands > 1 {
            for _ in 0..len {
                word.push(rng.gen_range(1..strands as i32) * if rng.gen_bool(0.5) { 1 } else { -1 });
            }
        }
        if braid_components(&word, strands) == 1 {
            if let Ok(d) = MorseWord::from_braid(&word, strands) {
                fuzzed.push(d);
            }
        }
    }
    for i in 0..500u64 {
        fuzzed.push(random_move_sequence(&bases[i as usize % bases.len()], i, (i % 21) as usize));
    }
    for (i, d) in fuzzed.iter().enumerate() {
        let nd = d.normalize();
        if nd.normalize() != nd || !nd.is_normal() {
            bad.push(format!("#{i}: normalize"));
        }
        if nd.writhe() % 2 != 0 {
            bad.push(format!("#{i}: odd normalized writhe"));
        }
        match d.corrected() {
            Ok(c) if c.writhe() == 0 => {}
            _ => bad.push(format!("#{i}: corrected")),
        }
    }
    outcome(bad.is_empty(), format!("ξ^n for n in -5..=5, {} fuzzed diagrams{}", fuzzed.len(), if bad.is_empty() { String::new() } else { format!(", failing: {bad:?}") }))
}

fn main() {
    let catalog = Catalog::builtin();
    let criteria: Vec<(&str, Check)> = vec![
        ("1 reference ideals", Box::new(|| table_reproduction(&catalog))),
        ("2 Alexander column", Box::new(|| alexander_column(&catalog))),
        ("3 colorings = homomorphisms", Box::new(|| homomorphism_oracle(&catalog))),
        ("4 Reidemeister invariance", Box::new(|| reidemeister_suite(&catalog))),
        ("5 structure identities", Box::new(structure_identities)),
        ("6 trefoil universal invariant", Box::new(|| trefoil(&catalog))),
        ("7 conjecture harness", Box::new(|| conjecture_harness(&catalog))),
        ("8 writhe and normalization", Box::new(|| writhe_suite(&catalog))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
