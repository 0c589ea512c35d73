//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hflab::construct::{group_extension_named, is_prime_fixed, prime, SquareClassSubgroup};
use hflab::corpus::{corpus, extension_entry, extension_models, finite_field_entry, CorpusEntry, ODD_PRIMES};
use hflab::fields::gauss::Polynomial;
use hflab::fields::{
    char2_criterion, q_2adic, q_finite_field, q_padic_oracle, square_class_hyperfield, v_q_2rank, FiniteFieldSpec,
    GaloisField, GaussValuation, PadicOracleConfig,
};
use hflab::hyperfield::{check_axioms, find_isomorphisms, Elem, ElemSet, FiniteHyperfield, HyperfieldTables};
use hflab::rigidity::{basic_part, detect_valuation_subgroups};
use hflab::witt::{harrison_check_rings, witt_ring, WittRing};

use common::PresentationOracle;

type Outcome = (bool, String);
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn axioms_on_corpus(entries: &[CorpusEntry], built_in: Duration) -> Outcome {
    let start = Instant::now();
    let failing: Vec<&str> =
        entries.iter().filter(|e| !check_axioms(e.hyperfield.tables()).all_pass()).map(|e| e.name.as_str()).collect();
    let elapsed = built_in + start.elapsed();
    let ok = failing.is_empty() && elapsed < Duration::from_secs(60);
    (ok, format!("{} hyperfields, failures {:?}, {:.2}s including construction", entries.len(), failing, elapsed.as_secs_f64()))
}

fn prime_on_corpus(entries: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let p = prime(&e.hyperfield);
        if !check_axioms(p.tables()).all_pass() || prime(&p) != p {
            bad.push(e.name.clone());
        }
    }
    (bad.is_empty(), format!("{} hyperfields, failures {:?}", entries.len(), bad))
}

/// `{0,1,p}` with `1+1 = p+p = {0,1,p}`, `1+p = {1,p}`, `p·p = 1`.
fn three_element_table() -> FiniteHyperfield {
    let labels = ["0", "1", "p"].map(String::from).to_vec();
    let all = ElemSet::full(3);
    let t = HyperfieldTables::from_fns(
        labels,
        Elem::new(0),
        Elem::new(1),
        |a| a,
        |a, b| match (a.index(), b.index()) {
            (0, _) | (_, 0) => Elem::new(0),
            (x, y) if x == y => Elem::new(1),
            _ => Elem::new(2),
        },
        |a, b| match (a.index(), b.index()) {
            (0, x) | (x, 0) => ElemSet::singleton(3, Elem::new(x)),
            (1, 2) | (2, 1) => ElemSet::from_iter(3, [Elem::new(1), Elem::new(2)]),
            _ => all.clone(),
        },
    )
    .unwrap();
    FiniteHyperfield::new(t).unwrap()
}

fn three_element_example() -> Outcome {
    let (ext, _) = group_extension_named(&FiniteHyperfield::krasner(), &["p"]).unwrap();
    let verbatim = ext == three_element_table();
    let brute = square_class_hyperfield(&GaloisField::of_order(5).unwrap());
    let brute = prime(&brute);
    let isos = find_isomorphisms(&ext, &brute, usize::MAX);
    (verbatim && isos.len() == 1, format!("table matches: {verbatim}, isomorphisms to brute-force Q(F5): {}", isos.len()))
}

fn prime_step() -> Outcome {
    let quotient = |q: u32| square_class_hyperfield(&GaloisField::of_order(q).unwrap());
    let noop: Vec<(u32, bool)> = [7, 9, 11, 13].into_iter().map(|q| (q, is_prime_fixed(&quotient(q)))).collect();
    let strict: Vec<(u32, bool)> = [3, 5]
        .into_iter()
        .map(|q| {
            let h = quotient(q);
            let p = prime(&h);
            let enlarges = h.elements().all(|a| h.elements().all(|b| h.add(a, b).is_subset(p.add(a, b))))
                && h.elements().any(|a| h.elements().any(|b| h.add(a, b) != p.add(a, b)));
            (q, enlarges)
        })
        .collect();
    let ok = noop.iter().all(|x| x.1) && strict.iter().all(|x| x.1);
    (ok, format!("no-op {noop:?}, strict enlargement {strict:?}"))
}

fn dual_path() -> Outcome {
    let mut bad = Vec::new();
    for p in ODD_PRIMES {
        let cfg = PadicOracleConfig::default_for(p).unwrap();
        let oracle = q_padic_oracle(p, cfg);
        let residue = q_finite_field(FiniteFieldSpec::new(p as u32, 1).unwrap());
        let (built, _) = group_extension_named(&residue, &[p.to_string()]).unwrap();
        match oracle {
            Ok(o) if o == built => {}
            _ => bad.push(p),
        }
    }
    let two = q_2adic(PadicOracleConfig::default_for(2).unwrap());
    let two_ok = matches!(&two, Ok(h) if check_axioms(h.tables()).all_pass() && h.quadratic_violation().is_none() && h.nonzero_count() == 8);
    (bad.is_empty() && two_ok, format!("odd p disagreeing: {bad:?}; 2-adic model valid: {two_ok}"))
}

fn case_table() -> Outcome {
    // (base q, expected (U:T), expected B(T) form, expected exceptional)
    let rows = [(5u32, 2usize, "T", true), (3, 2, "±T = U", false), (4, 1, "T = U", true)];
    let mut lines = Vec::new();
    let mut ok = true;
    for (q, idx, shape, exc) in rows {
        let e = extension_entry(&finite_field_entry(q).unwrap(), 1).unwrap();
        let h = &e.hyperfield;
        let m = e.extension.as_ref().unwrap();
        let t = SquareClassSubgroup::trivial(h);
        let u = m.designed_upper(h);
        let r = basic_part(h, &t);
        let got_idx = u.len() / t.len();
        let got_shape = match (r.basic_is_subgroup_itself(), r.basic_is_plus_minus(), &r.basic == u.members()) {
            (true, _, true) => "T = U",
            (true, _, false) => "T",
            (false, true, true) => "±T = U",
            _ => "other",
        };
        let row_ok = got_idx == idx && got_shape == shape && r.exceptional == exc;
        ok &= row_ok;
        lines.push(format!("q={q}: ({got_idx}, {got_shape}, {})", r.exceptional));
    }
    (ok, lines.join("; "))
}

fn basic_part_transport(models: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in models {
        let m = e.extension.as_ref().unwrap();
        let h = &e.hyperfield;
        let b = basic_part(h, &SquareClassSubgroup::trivial(h)).basic;
        let b0 = basic_part(&m.base, &SquareClassSubgroup::trivial(&m.base)).basic;
        if m.embedding.apply_set(&b0) != b {
            bad.push(e.name.clone());
        }
    }
    (bad.is_empty(), format!("{} extension models, failures {:?}", models.len(), bad))
}

fn witt_rings(entries: &[CorpusEntry]) -> Outcome {
    let cases: [(&str, FiniteHyperfield, (usize, usize)); 3] = [
        ("krasner", FiniteHyperfield::krasner(), (2, 2)),
        ("Q(F3)", q_finite_field(FiniteFieldSpec::from_q(3).unwrap()), (4, 4)),
        ("Q(F5)", q_finite_field(FiniteFieldSpec::from_q(5).unwrap()), (4, 2)),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, h, want) in &cases {
        let w = witt_ring(h).unwrap();
        let oracle = PresentationOracle::new(h);
        let got = (w.len(), w.order_of_one());
        let by_oracle = (oracle.order() as usize, oracle.order_of(&[h.one()]) as usize);
        ok &= got == *want && by_oracle == *want;
        parts.push(format!("{name}: {got:?} oracle {by_oracle:?}"));
    }

    // Transport along every isomorphism between corpus members whose Witt
    // rings fit the enumeration bounds.
    let mut rings: Vec<(usize, WittRing)> = Vec::new();
    let mut skipped = 0;
    for (i, e) in entries.iter().enumerate() {
        if e.hyperfield.nonzero_count() > 16 {
            skipped += 1;
            continue;
        }
        match witt_ring(&e.hyperfield) {
            Ok(w) => rings.push((i, w)),
            Err(_) => skipped += 1,
        }
    }
    let mut by_size: HashMap<usize, Vec<&(usize, WittRing)>> = HashMap::new();
    for r in &rings {
        by_size.entry(entries[r.0].hyperfield.len()).or_default().push(r);
    }
    let (mut checked, mut failed) = (0usize, Vec::new());
    for group in by_size.values() {
        for (i, w1) in group.iter().map(|r| (r.0, &r.1)) {
            for (j, w2) in group.iter().map(|r| (r.0, &r.1)) {
                if w1.len() != w2.len() {
                    continue;
                }
                for alpha in find_isomorphisms(&entries[i].hyperfield, &entries[j].hyperfield, usize::MAX) {
                    checked += 1;
                    match harrison_check_rings(&alpha, w1, w2) {
                        Ok(r) if r.holds => {}
                        _ => failed.push(format!("{} -> {}", entries[i].name, entries[j].name)),
                    }
                }
            }
        }
    }
    ok &= failed.is_empty() && checked > 0;
    parts.push(format!("{checked} isomorphisms transported, failures {failed:?}, {skipped} hyperfields beyond the ring bounds"));
    (ok, parts.join("; "))
}

fn random_polynomial(rng: &mut ChaCha8Rng, p: i64) -> Polynomial {
    let vars = ["x", "y"];
    let mut f = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut num: i64 = rng.gen_range(-30..=30);
        if num == 0 {
            num = 1;
        }
        let den: i64 = rng.gen_range(1..=12);
        let shift = rng.gen_range(-2i32..=2);
        let scale = BigRational::from_integer(BigInt::from(p)).pow(shift);
        let c = BigRational::new(BigInt::from(num), BigInt::from(den)) * scale;
        let mut term = Polynomial::constant(c);
        for v in vars {
            let e = rng.gen_range(0..=2);
            term = &term * &Polynomial::var(v).pow(e);
        }
        f = &f + &term;
    }
    if f.is_zero() {
        Polynomial::integer(1)
    } else {
        f
    }
}

fn gauss_multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a55);
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2u64, 3, 5] {
        let v = GaussValuation::new(p).unwrap();
        let mut failures = 0;
        for _ in 0..1000 {
            let f = random_polynomial(&mut rng, p as i64);
            let g = random_polynomial(&mut rng, p as i64);
            let (vf, vg, vfg) = (v.of_polynomial(&f), v.of_polynomial(&g), v.of_polynomial(&(&f * &g)));
            if vfg != vf.zip(vg).map(|(a, b)| a + b) {
                failures += 1;
            }
        }
        // p^k·(1 + x) attains every k.
        let witnesses = (-5i32..=5).all(|k| {
            let c = BigRational::from_integer(BigInt::from(p)).pow(k);
            let f = &Polynomial::constant(c) * &(&Polynomial::integer(1) + &Polynomial::var("x"));
            v.of_polynomial(&f) == Some(k as i64)
        });
        ok &= failures == 0 && witnesses;
        parts.push(format!("p={p}: 1000 pairs, {failures} failures, values -5..=5 attained: {witnesses}"));
    }
    (ok, parts.join("; "))
}

fn char2_on_models() -> Outcome {
    let mut results = Vec::new();
    for p in ODD_PRIMES {
        let h = q_padic_oracle(p, PadicOracleConfig::default_for(p).unwrap()).unwrap();
        results.push((p, char2_criterion(&h).unwrap()));
    }
    let krasner = char2_criterion(&FiniteHyperfield::krasner()).unwrap();
    let true_at: Vec<u64> = results.iter().filter(|r| r.1).map(|r| r.0).collect();
    (true_at.is_empty() && krasner, format!("Krasner {krasner}; predicate true (expected false) at p = {true_at:?}"))
}

fn detection_uniqueness(models: &[CorpusEntry]) -> Outcome {
    let mut bad = Vec::new();
    let (mut checked, mut excluded) = (0, 0);
    for e in models {
        let m = e.extension.as_ref().unwrap();
        let Some((shape, index)) = m.designed_shape() else {
            excluded += 1;
            continue;
        };
        checked += 1;
        let d = detect_valuation_subgroups(&e.hyperfield).unwrap();
        let hits = d.with_shape(shape, index);
        let designed_u = m.designed_upper(&e.hyperfield);
        let good = hits.len() == 1
            && hits[0].subgroup.len() == 1
            && hits[0].uppers.iter().any(|u| u.members() == designed_u.members());
        if !good {
            bad.push(format!("{} ({} hits)", e.name, hits.len()));
        }
    }
    (
        bad.is_empty() && checked > 0,
        format!("{checked} models checked, {excluded} with single-unit residue excluded, failures {bad:?}"),
    )
}

fn two_rank() -> Outcome {
    let r = v_q_2rank();
    (r == 1, format!("2-rank {r}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let entries = corpus().expect("corpus builds");
    let built_in = start.elapsed();
    let models = extension_models().expect("extension models build");

    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("axiom suite on the corpus", Box::new(|| axioms_on_corpus(&entries, built_in))),
        ("prime hyperfield valid and idempotent", Box::new(|| prime_on_corpus(&entries))),
        ("rank-one extension of Krasner is the {0,1,p} table", Box::new(three_element_example)),
        ("prime step for small finite fields", Box::new(prime_step)),
        ("p-adic oracle agrees with the extension construction", Box::new(dual_path)),
        ("basic part case table", Box::new(case_table)),
        ("basic part of {1} transported by the embedding", Box::new(|| basic_part_transport(&models))),
        ("Witt rings and transport along isomorphisms", Box::new(|| witt_rings(&entries))),
        ("Gauss valuation multiplicative and surjective", Box::new(gauss_multiplicativity)),
        ("characteristic-2 predicate", Box::new(char2_on_models)),
        ("unique valuation-shaped subgroup of the designed shape", Box::new(|| detection_uniqueness(&models))),
        ("2-rank of V_Q", Box::new(two_rank)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = run();
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} [{detail}] ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
