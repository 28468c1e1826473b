//! Acceptance suite: one test per shipped guarantee. Everything here is
//! exact; a single mismatch anywhere is a failure.

use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use slinf_core::classify::{self, AnnihilatorTag};
use slinf_core::finrep;
use slinf_core::modmodel::{
    decompose_blocks, AttachSide, Block, BlockSequence, DecomposeStrategy, ModuleDescriptor,
    PeriodicBlocks,
};
use slinf_core::oracle;
use slinf_core::orders::{OrderKind, OrderSpec};
use slinf_core::weights::FiniteWeight;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slinf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cli_json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run_cli(&full);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn fw(c: &[i64]) -> FiniteWeight {
    FiniteWeight::new(c.to_vec()).unwrap()
}

// ---------------------------------------------------------------------------
// 1. The worked periodic-shifted example: both support-weight variants give
//    the documented verdicts, quickly.
// ---------------------------------------------------------------------------

#[test]
fn worked_example_cli_verdicts() {
    let start = Instant::now();
    let mu = cli_json(&["classify", &fixture("example_mu.json")]);
    let eta = cli_json(&["classify", &fixture("example_eta.json")]);
    assert!(start.elapsed().as_secs_f64() < 1.0, "classification too slow");

    assert_eq!(mu["highest_weight"]["highest_weight"], Value::Bool(false));
    assert_eq!(mu["bounded"]["bounded"], Value::Bool(false));
    assert_eq!(mu["tag"], Value::String("zero".into()));
    assert_eq!(mu["annihilator_nonzero"], Value::Bool(false));

    assert_eq!(eta["highest_weight"]["highest_weight"], Value::Bool(true));
    assert_eq!(eta["bounded"]["bounded"], Value::Bool(false));
    assert_eq!(eta["tag"], Value::String("zero".into()));
    assert_eq!(eta["annihilator_nonzero"], Value::Bool(false));
}

// ---------------------------------------------------------------------------
// 2. The rank-two support table is reproduced verbatim.
// ---------------------------------------------------------------------------

#[test]
fn rank_two_support_table_is_exact() {
    let start = Instant::now();
    let body = cli_json(&["support", "2", "0", "-2"]);
    assert!(start.elapsed().as_secs_f64() < 1.0, "support too slow");
    let entries = body["weights"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    let mut seen: Vec<&str> = entries
        .iter()
        .map(|e| {
            assert_eq!(e["multiplicity"], Value::from(1));
            e["weight"].as_str().unwrap()
        })
        .collect();
    seen.sort_unstable();
    assert_eq!(seen, vec!["(-1,-1)", "(-2,0)", "(0,-2)"]);
}

// ---------------------------------------------------------------------------
// Shared sweep: every dominant shift-normalized weight over sl(2..4) whose
// dimension stays under the cap. Dimensions are evaluated in plain integer
// arithmetic here so the sweep itself is independent of the library.
// ---------------------------------------------------------------------------

fn dim128(c: &[i64]) -> i128 {
    let n = c.len();
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..n {
        for j in i + 1..n {
            num *= (c[i] - c[j] + (j - i) as i64) as i128;
            den *= (j - i) as i128;
        }
    }
    num / den
}

fn dominant_sweep(n: usize, cap: u64) -> Vec<FiniteWeight> {
    // last coordinate pinned to zero; the first is bounded by the cap since
    // the dimension is at least lambda_1 + 1
    fn rec(
        rev: &mut Vec<i64>,
        i: usize,
        min: i64,
        bound: i64,
        cap: u64,
        out: &mut Vec<FiniteWeight>,
    ) {
        if i == rev.len() {
            let coords: Vec<i64> = rev.iter().rev().copied().collect();
            if dim128(&coords) <= cap as i128 {
                out.push(FiniteWeight::new(coords).unwrap());
            }
            return;
        }
        for v in min..=bound {
            rev[i] = v;
            rec(rev, i + 1, v, bound, cap, out);
        }
    }
    let mut out = Vec::new();
    // coordinates ascend from the right end, so the reversal is dominant
    let mut rev = vec![0i64; n];
    rec(&mut rev, 1, 0, cap as i64 - 1, cap, &mut out);
    out
}

// ---------------------------------------------------------------------------
// 3. The matrix construction and the Freudenthal recursion agree
//    entry-for-entry on every module of dimension at most 200.
// ---------------------------------------------------------------------------

#[test]
fn matrix_oracle_characters_match_freudenthal() {
    let mut count = 0usize;
    for n in 2..=4 {
        for w in dominant_sweep(n, 200) {
            let m = oracle::build_simple(&w, 200).unwrap();
            let got = oracle::character_of(&m);
            let want = finrep::freudenthal_character(&w, 10_000).unwrap();
            assert_eq!(got, want, "character mismatch at {w}");
            count += 1;
        }
    }
    assert!(count >= 250, "sweep unexpectedly small: {count}");
}

// ---------------------------------------------------------------------------
// 4. Multiplicities in every character table sum to the Weyl dimension.
// ---------------------------------------------------------------------------

#[test]
fn character_dimensions_match_weyl_formula() {
    for n in 2..=4 {
        for w in dominant_sweep(n, 200) {
            let table = finrep::freudenthal_character(&w, 10_000).unwrap();
            let total: u64 = table.entries().values().sum();
            assert_eq!(total, finrep::weyl_dim(&w).unwrap(), "dimension mismatch at {w}");
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized descriptor generation. Blocks have one or two coordinates, so
// every block is multiplicity free; the value chain is weakly decreasing in
// position order, which makes the flattened profile dominant by
// construction. Support weights are always multiplicity-one.
// ---------------------------------------------------------------------------

fn chain_weight(rng: &mut ChaCha8Rng, cur: &mut i64, size: usize) -> FiniteWeight {
    let mut v = Vec::with_capacity(size);
    for _ in 0..size {
        v.push(*cur);
        *cur -= rng.gen_range(0..=1);
    }
    FiniteWeight::new(v).unwrap()
}

fn random_mu(rng: &mut ChaCha8Rng, lam: &FiniteWeight) -> FiniteWeight {
    match lam.coords() {
        [a] => fw(&[*a]),
        [a, b] => {
            let t = rng.gen_range(0..=(a - b));
            fw(&[a - t, b + t])
        }
        _ => unreachable!("generator emits blocks of size 1 or 2"),
    }
}

fn chain_block(rng: &mut ChaCha8Rng, cur: &mut i64, size: usize) -> Block {
    let lam = chain_weight(rng, cur, size);
    let mu = random_mu(rng, &lam);
    Block::new(lam, Some(mu)).unwrap()
}

/// A periodic group whose repetitions stay dominant: `sign` is -1 for a
/// right end (values drop outward) and +1 for a left end.
fn chain_period(rng: &mut ChaCha8Rng, cur: &mut i64, drift: bool, sign: i64) -> PeriodicBlocks {
    if !drift {
        let b = chain_block(rng, cur, 1);
        return PeriodicBlocks::new(vec![b], 0).unwrap();
    }
    let size = rng.gen_range(1..=2);
    let b = chain_block(rng, cur, size);
    let first = b.lam().coords()[0];
    let last = *b.lam().coords().last().unwrap();
    let magnitude = (first - last) + rng.gen_range(1..=2);
    PeriodicBlocks::new(vec![b], sign * magnitude).unwrap()
}

fn random_descriptor(rng: &mut ChaCha8Rng, finite_image: bool) -> ModuleDescriptor {
    let mut cur = rng.gen_range(1..=3);
    let kind = [
        OrderKind::RightInfinite,
        OrderKind::LeftInfinite,
        OrderKind::TwoSided,
    ][rng.gen_range(0..3)];
    let prefix_blocks = |rng: &mut ChaCha8Rng, cur: &mut i64| {
        let count = rng.gen_range(1..=2);
        (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=2);
                chain_block(rng, cur, size)
            })
            .collect::<Vec<_>>()
    };
    let seq = match kind {
        OrderKind::RightInfinite => {
            let prefix = prefix_blocks(rng, &mut cur);
            let period = chain_period(rng, &mut cur, !finite_image, -1);
            BlockSequence::right_infinite(prefix, period)
        }
        OrderKind::LeftInfinite => {
            let period = chain_period(rng, &mut cur, !finite_image, 1);
            let prefix = prefix_blocks(rng, &mut cur);
            BlockSequence::left_infinite(period, prefix)
        }
        OrderKind::TwoSided => {
            let left_drift = !finite_image && rng.gen_bool(0.5);
            let left = chain_period(rng, &mut cur, left_drift, 1);
            let prefix = prefix_blocks(rng, &mut cur);
            let right = chain_period(rng, &mut cur, !finite_image, -1);
            BlockSequence::two_sided(left, prefix, 1, right).unwrap()
        }
    };
    let d = ModuleDescriptor::vp(OrderSpec::new(kind), seq).unwrap();
    let report = d.validate(10_000).unwrap();
    assert!(
        report.is_valid(),
        "generator produced an invalid descriptor: {:?}\n{d:?}",
        report.violations
    );
    d
}

/// The same descriptor with fresh support weights in the finite prefix;
/// periodic groups are untouched.
fn perturb_prefix_mus(rng: &mut ChaCha8Rng, d: &ModuleDescriptor) -> ModuleDescriptor {
    let ModuleDescriptor::Vp { order, blocks } = d else {
        panic!("parabolic-induction descriptor expected");
    };
    let prefix: Vec<Block> = blocks
        .prefix()
        .iter()
        .map(|b| Block::new(b.lam().clone(), Some(random_mu(rng, b.lam()))).unwrap())
        .collect();
    let seq = match order.kind() {
        OrderKind::RightInfinite => {
            BlockSequence::right_infinite(prefix, blocks.right_group().unwrap().clone())
        }
        OrderKind::LeftInfinite => {
            BlockSequence::left_infinite(blocks.left_group().unwrap().clone(), prefix)
        }
        OrderKind::TwoSided => BlockSequence::two_sided(
            blocks.left_group().unwrap().clone(),
            prefix,
            blocks.prefix_start(),
            blocks.right_group().unwrap().clone(),
        )
        .unwrap(),
    };
    ModuleDescriptor::vp(order.clone(), seq).unwrap()
}

// ---------------------------------------------------------------------------
// 5. Each truncation step embeds into the next: the bigger simple module
//    contains a vector of the predicted weight, highest for the embedded
//    block range. 20 randomized descriptors, every check must succeed.
// ---------------------------------------------------------------------------

#[test]
fn truncation_steps_admit_the_predicted_highest_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for trial in 0..20 {
        let d = random_descriptor(&mut rng, trial % 2 == 0);
        let steps = d.exhaustion(3).unwrap();
        let mut checked = 0usize;
        for i in 1..steps.len() {
            let prev = &steps[i - 1];
            let step = &steps[i];
            if finrep::weyl_dim(&step.lam).unwrap() > 200 {
                break;
            }
            let m = oracle::build_simple(&step.lam, 200).unwrap();
            let target = prev.embed_weight(&prev.lam).unwrap();
            let nk = prev.lam.len();
            let start = match prev.next_attach {
                AttachSide::Right => 1,
                AttachSide::Left => step.lam.len() - nk + 1,
            };
            let sub: Vec<usize> = (start..start + nk - 1).collect();
            let found = oracle::highest_vectors_for_subrange(&m, &sub)
                .unwrap()
                .iter()
                .any(|(w, _)| w == target.coords());
            assert!(
                found,
                "trial {trial}: no highest vector of weight {target} in L({})",
                step.lam
            );
            checked += 1;
        }
        assert!(checked >= 1, "trial {trial}: no embedding within the cap");
    }
}

// ---------------------------------------------------------------------------
// 6. Annihilator tags are invariants of the module, not of its
//    presentation: unchanged under support-weight perturbation, block
//    re-decomposition, a global shift, and a finite relabeling; and the tag
//    is the zero ideal exactly when the profile takes infinitely many
//    values. 200 randomized descriptors.
// ---------------------------------------------------------------------------

#[test]
fn annihilator_tags_are_equivalence_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for trial in 0..200 {
        let finite = rng.gen_bool(0.5);
        let d = random_descriptor(&mut rng, finite);
        let tag = classify::annihilator_tag(&d).unwrap();
        assert!(tag.shape_ok(), "trial {trial}: malformed tag {tag:?}");

        let profile = d.limit_weight().unwrap();
        assert_eq!(
            tag == AnnihilatorTag::ZeroIdeal,
            !profile.image_is_finite(),
            "trial {trial}: zero tag must match an infinite image"
        );

        // (a) support weights in finitely many blocks
        let perturbed = perturb_prefix_mus(&mut rng, &d);
        assert_eq!(
            classify::annihilator_tag(&perturbed).unwrap(),
            tag,
            "trial {trial}: tag changed under a mu perturbation"
        );

        // (b) re-decomposition under both strategies
        for strategy in [DecomposeStrategy::GreedyMin, DecomposeStrategy::FixedSize(1)] {
            let re = decompose_blocks(&profile, strategy).unwrap();
            assert_eq!(
                classify::annihilator_tag(&re).unwrap(),
                tag,
                "trial {trial}: tag changed under {strategy:?}"
            );
        }

        // (c) global constant shift
        let c = rng.gen_range(-3..=3);
        let shifted = decompose_blocks(&profile.global_shift(c), DecomposeStrategy::GreedyMin)
            .unwrap();
        assert_eq!(
            classify::annihilator_tag(&shifted).unwrap(),
            tag,
            "trial {trial}: tag changed under a shift by {c}"
        );

        // (d) finite order relabeling
        let kind = profile.order().kind();
        let pair = match kind {
            OrderKind::LeftInfinite => (-2, -1),
            _ => (1, 2),
        };
        let relabeled = profile
            .clone()
            .with_order(OrderSpec::with_relabeling(kind, vec![pair]).unwrap())
            .unwrap();
        let re = decompose_blocks(&relabeled, DecomposeStrategy::GreedyMin).unwrap();
        assert_eq!(
            classify::annihilator_tag(&re).unwrap(),
            tag,
            "trial {trial}: tag changed under a relabeling"
        );
    }
}

// ---------------------------------------------------------------------------
// 7. Degree-2 truncated annihilators separate non-isomorphic small simples
//    with distinct Casimir scalars: the Casimir-minus-scalar element lies in
//    exactly one kernel. Identical highest weights give identical kernels.
// ---------------------------------------------------------------------------

#[test]
fn degree_two_kernels_separate_by_casimir_scalar() {
    let mut candidates: Vec<FiniteWeight> = Vec::new();
    for n in 2..=3 {
        candidates.extend(dominant_sweep(n, 20));
    }
    let mut pairs = Vec::new();
    'outer: for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            let (a, b) = (&candidates[i], &candidates[j]);
            if a.len() != b.len() {
                continue;
            }
            let ca = finrep::casimir_eigenvalue(a).unwrap();
            let cb = finrep::casimir_eigenvalue(b).unwrap();
            if ca == cb {
                continue;
            }
            pairs.push((a.clone(), b.clone()));
            if pairs.len() == 30 {
                break 'outer;
            }
        }
    }
    assert_eq!(pairs.len(), 30);

    for (a, b) in &pairs {
        let ma = oracle::build_simple(a, 200).unwrap();
        let mb = oracle::build_simple(b, 200).unwrap();
        let ka = oracle::truncated_annihilator(&[&ma], 2).unwrap();
        let kb = oracle::truncated_annihilator(&[&mb], 2).unwrap();
        assert!(
            !oracle::same_span(&ka.basis, &kb.basis),
            "kernels coincide for {a} and {b}"
        );

        let n = a.len();
        let (_, scalar) = oracle::casimir_matrix(&ma).unwrap();
        let mut element = oracle::casimir_coefficients(n).unwrap();
        element[0] = &element[0] - &scalar; // slot 0 is the unit monomial
        assert!(oracle::evaluate_element(&ma, &element, 2).unwrap().is_zero());
        assert!(!oracle::evaluate_element(&mb, &element, 2).unwrap().is_zero());
        assert!(oracle::in_span(&ka.basis, &element));
        assert!(!oracle::in_span(&kb.basis, &element));
    }

    // identical highest weights: the kernel is an invariant of the weight
    for w in [fw(&[2, 0]), fw(&[1, 1, 0]), fw(&[3, -1])] {
        let m1 = oracle::build_simple(&w, 200).unwrap();
        let m2 = oracle::build_simple(&w, 200).unwrap();
        let k1 = oracle::truncated_annihilator(&[&m1], 2).unwrap();
        let k2 = oracle::truncated_annihilator(&[&m2], 2).unwrap();
        assert!(oracle::same_span(&k1.basis, &k2.basis), "kernel differs for {w}");
    }
}

// ---------------------------------------------------------------------------
// 8. The shape-based multiplicity-freeness test agrees with the character
//    table on every dominant weight of dimension at most 300 over sl(2..4).
// ---------------------------------------------------------------------------

#[test]
fn multiplicity_free_shape_matches_character_tables() {
    for n in 2..=4 {
        for w in dominant_sweep(n, 300) {
            let fast = finrep::multiplicity_free_shape(w.coords());
            let table = finrep::freudenthal_character(&w, 10_000).unwrap();
            let slow = table.entries().values().all(|&m| m == 1);
            assert_eq!(fast, slow, "multiplicity-freeness disagreement at {w}");
        }
    }
}

// ---------------------------------------------------------------------------
// 9. Decision procedures only see the tail: changing support weights in the
//    finite prefix never flips the highest-weight or boundedness verdicts.
//    50 randomized trials.
// ---------------------------------------------------------------------------

#[test]
fn mu_prefix_changes_never_flip_decision_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for trial in 0..50 {
        let d = random_descriptor(&mut rng, trial % 3 == 0);
        let hw = classify::is_highest_weight(&d).unwrap().highest_weight;
        let bounded = classify::is_bounded(&d).unwrap().bounded;
        for _ in 0..3 {
            let p = perturb_prefix_mus(&mut rng, &d);
            assert_eq!(
                classify::is_highest_weight(&p).unwrap().highest_weight,
                hw,
                "trial {trial}: highest-weight verdict flipped"
            );
            assert_eq!(
                classify::is_bounded(&p).unwrap().bounded,
                bounded,
                "trial {trial}: boundedness verdict flipped"
            );
        }
    }
}
