use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tadic::constructions::gonality_one;
use tadic::heights::{check_min_height_criteria, height_minpoly, HeightValue};
use tadic::pipeline::verify_candidate;
use tadic::poly::parse_bipoly;
use tadic::search::{
    build_linear_system, exhaustive_search, exhaustive_search_all, exhaustive_search_with, random_candidate,
    random_product, random_search, run_cascade, ExhaustiveOptions, RandomSpec, SearchReport, EXHAUSTIVE_ORDER,
};
use tadic::{field_of_order, Error};

fn strip_time(mut r: SearchReport) -> SearchReport {
    r.wall_time_s = 0.0;
    r
}

#[test]
fn shard_layouts_agree() {
    let space = build_linear_system(field_of_order(2).unwrap(), 3).unwrap();
    let whole = exhaustive_search(&space, 0, 1, None).unwrap();
    for shards in [4u64, 16] {
        let mut sum = SearchReport::default();
        let mut points = 0;
        for s in 0..shards {
            let r = exhaustive_search(&space, s, shards, None).unwrap();
            assert_eq!(r.tested, 4096 / shards);
            points += r.tested;
            sum.merge(&r);
        }
        assert_eq!(points, 4096);
        assert_eq!(sum.counters(), whole.counters(), "{shards} shards");
        let merged = exhaustive_search_all(&space, shards, None).unwrap();
        assert_eq!(merged.counters(), whole.counters());
    }
}

#[test]
fn shards_are_disjoint_and_cover_the_space() {
    // over F_3 the generic path enumerates; collect every point explicitly
    let f3 = field_of_order(3).unwrap();
    let space = build_linear_system(f3, 1).unwrap();
    let total = space.size().unwrap();
    let mut seen = BTreeSet::new();
    for s in 0..9 {
        let r = exhaustive_search(&space, s, 9, None).unwrap();
        assert_eq!(r.tested, total / 9);
        for h in r.hits {
            assert!(seen.insert(h), "hit found by two shards");
        }
    }
    let whole = exhaustive_search(&space, 0, 1, None).unwrap();
    assert_eq!(seen, whole.hits.into_iter().collect());
}

#[test]
fn determinism() {
    let space = build_linear_system(field_of_order(2).unwrap(), 3).unwrap();
    let a = strip_time(exhaustive_search(&space, 5, 16, None).unwrap());
    let b = strip_time(exhaustive_search(&space, 5, 16, None).unwrap());
    assert_eq!(a.to_json(), b.to_json());
    let spec = RandomSpec { field: field_of_order(3).unwrap(), n: 1, budget: 3000, seed: 99, stop_at_first: false };
    let a = strip_time(random_search(&spec).unwrap());
    let b = strip_time(random_search(&spec).unwrap());
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn pruned_candidates_really_fail() {
    // every candidate the cascade rejects must fail full verification
    let f2 = field_of_order(2).unwrap();
    let space = build_linear_system(f2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..400 {
        let t: Vec<u32> = (0..space.dim()).map(|_| rng.gen_range(0..2)).collect();
        let f = space.poly_of_vector(&space.point(&t));
        let mut rep = SearchReport::default();
        if !run_cascade(&f, 3, &EXHAUSTIVE_ORDER, &mut rep) {
            let v = verify_candidate(&f).unwrap();
            assert!(!v.minimal_height, "{f} was pruned but verifies");
            checked += 1;
        }
    }
    assert!(checked > 300);
}

#[test]
fn hits_are_valid() {
    let f3 = field_of_order(3).unwrap();
    let space = build_linear_system(f3, 1).unwrap();
    let rep = exhaustive_search(&space, 0, 1, None).unwrap();
    assert!(!rep.hits.is_empty());
    for h in &rep.hits {
        let f = parse_bipoly(f3, h).unwrap();
        assert_eq!(f.deg_x(), Some(4));
        assert_eq!(height_minpoly(&f).unwrap(), HeightValue::new(1, 4).unwrap());
        assert!(check_min_height_criteria(&f, Some(1)).pass);
        assert!(verify_candidate(&f).unwrap().minimal_height);
    }
    // the explicit construction is one of them
    let g = gonality_one(f3).unwrap().poly.to_string();
    assert!(rep.hits.contains(&g), "{g}");
}

#[test]
fn random_hits_lie_in_the_exhaustive_set() {
    for q in [2u64, 3] {
        let f = field_of_order(q).unwrap();
        let exhaustive: BTreeSet<String> =
            exhaustive_search(&build_linear_system(f, 1).unwrap(), 0, 1, None).unwrap().hits.into_iter().collect();
        let spec = RandomSpec { field: f, n: 1, budget: 4000, seed: 17, stop_at_first: false };
        let rep = random_search(&spec).unwrap();
        let random: BTreeSet<String> = rep.hits.into_iter().collect();
        assert!(!random.is_empty());
        assert!(random.is_subset(&exhaustive), "q={q}: {:?}", random.difference(&exhaustive).collect::<Vec<_>>());
    }
}

#[test]
fn random_stop_at_first() {
    let spec = RandomSpec { field: field_of_order(3).unwrap(), n: 1, budget: 1 << 14, seed: 5, stop_at_first: true };
    let rep = random_search(&spec).unwrap();
    assert_eq!(rep.hits.len(), 1);
    assert!(rep.tested < 1 << 14);
}

#[test]
fn random_candidate_golden() {
    let spec = RandomSpec { field: field_of_order(3).unwrap(), n: 3, budget: 1, seed: 42, stop_at_first: false };
    let f = random_candidate(&spec, 0);
    assert_eq!(
        f.to_string(),
        "T^3*x^12 + (2*T^3+T^2)*x^11 + (2*T^2+2*T)*x^10 + 2*x^9 + T*x^8 + T^3*x^7 + 2*T*x^6 + (T^3+2*T^2)*x^5 + (T^3+T^2)*x^4 + (T^3+T^2+1)*x^3 + T*x^2 + (T^3+2*T^2)*x + 2*T^3"
    );
    // the candidate is the product with every T^4 and higher term removed
    let f0 = random_product(&spec, 0);
    assert_eq!(f0.truncate_t(4), f);
    assert!(f0.deg_t().unwrap() > 3);
}

#[test]
fn checkpoint_resume_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shard.ckpt");
    let space = build_linear_system(field_of_order(2).unwrap(), 3).unwrap();
    let fresh = strip_time(exhaustive_search(&space, 0, 2, None).unwrap());
    let mut done = false;
    let mut rounds = 0;
    let mut last = None;
    while !done {
        let opts = ExhaustiveOptions { checkpoint: Some(path.clone()), checkpoint_interval: 64, max_candidates: Some(300) };
        let (r, d) = exhaustive_search_with(&space, 0, 2, &opts).unwrap();
        done = d;
        rounds += 1;
        last = Some(r);
    }
    assert_eq!(rounds, 7);
    assert_eq!(strip_time(last.unwrap()).to_json(), fresh.to_json());
}

#[test]
fn bad_checkpoints_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shard.ckpt");
    let f2 = field_of_order(2).unwrap();
    let space = build_linear_system(f2, 3).unwrap();
    exhaustive_search(&space, 1, 4, Some(&path)).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();

    let e = exhaustive_search(&build_linear_system(f2, 2).unwrap(), 1, 2, Some(&path)).unwrap_err();
    let Error::CheckpointMismatch(msg) = e else { panic!("{e}") };
    for field in ["space_hash", "n", "total_shards"] {
        assert!(msg.contains(field), "{msg}");
    }
    std::fs::write(&path, text.replace("next_index=", "next_index=x")).unwrap();
    assert!(matches!(exhaustive_search(&space, 1, 4, Some(&path)), Err(Error::CheckpointFormat(_))));
    std::fs::write(&path, "garbage").unwrap();
    assert!(matches!(exhaustive_search(&space, 1, 4, Some(&path)), Err(Error::CheckpointFormat(_))));
}

#[test]
fn invalid_shards() {
    let space = build_linear_system(field_of_order(3).unwrap(), 1).unwrap();
    assert!(matches!(exhaustive_search(&space, 0, 2, None), Err(Error::InvalidShard(_))));
    assert!(matches!(exhaustive_search(&space, 9, 9, None), Err(Error::InvalidShard(_))));
    // more shards than points
    assert!(matches!(exhaustive_search(&space, 0, 729, None), Err(Error::InvalidShard(_))));
}

#[test]
fn reducible_variant_of_the_f3_quartic() {
    // with constant term 2T instead of T the quartic over F_3 factors
    let f3 = field_of_order(3).unwrap();
    let f = parse_bipoly(f3, "T*x^4 + x^3 + 2*x + 2*T").unwrap();
    let v = verify_candidate(&f).unwrap();
    assert_eq!(v.irreducible, Some(false));
    assert!(!v.minimal_height);
}
