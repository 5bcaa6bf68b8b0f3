use llab_core::abelfiber::{
    components_by_maximality, components_by_witness, eh_exists_brute, eh_exists_greedy, piece_dims,
    VanishingSequence,
};
use llab_core::degeneration::{random_point, DegenerationFamily};
use llab_core::exactmath::{
    format_rat, frac, interpolate_grid, parse_rat, rational, sample_grid, BivarPoly, Rat, Subspace,
};
use llab_core::limitseries::generate_exact;
use llab_core::oracle::{hf_linear_algebra, hf_minor_combinatorial, hf_union};
use llab_core::schemes::{enumerate_specs, hilbert_minor, hilbert_union, make_union_spec, MinorScheme};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn bivar(max_degree: u32) -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec(((0..=max_degree), (0..=max_degree), small_rat()), 0..8).prop_map(move |terms| {
        BivarPoly::from_terms(
            terms
                .into_iter()
                .filter(|(i, j, _)| i + j <= max_degree)
                .map(|(i, j, c)| ((i, j), c)),
        )
    })
}

fn sequence(d: usize) -> impl Strategy<Value = VanishingSequence> {
    prop::collection::btree_set(0..=d, 1..=d + 1)
        .prop_map(move |set| VanishingSequence::new(d, set.into_iter().collect()).unwrap())
}

fn sequence_pair() -> impl Strategy<Value = (VanishingSequence, VanishingSequence)> {
    (0usize..=10).prop_flat_map(|d| (sequence(d), sequence(d)))
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(rational::rat), n), 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_strings_roundtrip(x in small_rat()) {
        prop_assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
    }

    #[test]
    fn interpolation_inverts_sampling(p in bivar(6)) {
        let degree = p.total_degree().unwrap_or(0);
        let grid = sample_grid(&p, degree + 1);
        prop_assert_eq!(interpolate_grid(&grid, degree).unwrap(), p);
    }

    #[test]
    fn subspace_dimension_formula(a in vectors(4), b in vectors(4)) {
        let (a, b) = (Subspace::span(4, &a).unwrap(), Subspace::span(4, &b).unwrap());
        let sum = a.sum(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains(&a).unwrap() && a.contains(&meet).unwrap());
    }

    #[test]
    fn minor_closed_form_degree_and_constant(p in 0usize..5, q in 0usize..5, m in 0usize..5) {
        let h = hilbert_minor(&MinorScheme::new(p, q, m as i64).unwrap()).unwrap();
        prop_assert_eq!(h.total_degree(), Some((m + p + q) as u32));
        prop_assert_eq!(h.eval_int(0, 0), rational::rat(1));
    }

    #[test]
    fn minor_closed_form_swaps_factors(p in 0usize..4, q in 0usize..4, m in 0usize..4) {
        let h = hilbert_minor(&MinorScheme::new(p, q, m as i64).unwrap()).unwrap();
        let g = hilbert_minor(&MinorScheme::new(q, p, m as i64).unwrap()).unwrap();
        prop_assert_eq!(h.swap_vars(), g);
    }

    #[test]
    fn oracles_agree(p in 0usize..3, q in 0usize..3, m in 0usize..3, s in 0u32..4, t in 0u32..4) {
        let sch = MinorScheme::new(p, q, m as i64).unwrap();
        let xs: Vec<usize> = sch.x_coords().collect();
        let ys: Vec<usize> = sch.y_coords().collect();
        prop_assert_eq!(
            hf_linear_algebra(&sch.generators(), &xs, &ys, s, t).unwrap(),
            hf_minor_combinatorial(p, q, m, s, t)
        );
    }

    #[test]
    fn combinatorial_oracle_is_monotone(p in 0usize..4, q in 0usize..4, m in 0usize..4, s in 0u32..6, t in 0u32..6) {
        let here = hf_minor_combinatorial(p, q, m, s, t);
        prop_assert!(hf_minor_combinatorial(p, q, m, s + 1, t) >= here);
        prop_assert!(hf_minor_combinatorial(p, q, m, s, t + 1) >= here);
    }

    #[test]
    fn union_degree_and_constant(r in 0usize..7, seed in any::<u64>()) {
        let specs = enumerate_specs(r, false);
        let spec = &specs[(seed % specs.len() as u64) as usize];
        let h = hilbert_union(spec);
        prop_assert_eq!(h.total_degree(), Some(r as u32));
        prop_assert_eq!(h.eval_int(0, 0), rational::rat(1));
    }

    #[test]
    fn union_oracle_matches_closed_form_pointwise(r in 0usize..4, seed in any::<u64>(), s in 0u32..4, t in 0u32..4) {
        let specs = enumerate_specs(r, false);
        let spec = &specs[(seed % specs.len() as u64) as usize];
        let value = hf_union(spec, s, t).unwrap();
        prop_assert_eq!(hilbert_union(spec).eval_int(s.into(), t.into()), rational::rat(value as i64));
    }

    #[test]
    fn component_methods_agree((ay, az) in sequence_pair()) {
        let a = components_by_maximality(&ay, &az).unwrap();
        let b = components_by_witness(&ay, &az).unwrap();
        let key = |cs: &[llab_core::abelfiber::FiberComponent]| {
            cs.iter().map(|c| (c.ell, c.dim_y, c.dim_z)).collect::<Vec<_>>()
        };
        prop_assert_eq!(key(&a), key(&b));
        let (p, q) = (ay.top(), az.top());
        for c in &b {
            let w = c.witness.unwrap();
            prop_assert_eq!(c.dim, p + q - w.i - w.j);
        }
    }

    #[test]
    fn pieces_form_chains((ay, az) in sequence_pair()) {
        let d = ay.d();
        let dims: Vec<Option<(usize, usize)>> = (0..=d).map(|l| piece_dims(&ay, &az, l).unwrap()).collect();
        for w in dims.windows(2) {
            if let [Some((y0, z0)), Some((y1, z1))] = w {
                prop_assert!(y1 >= y0);
                prop_assert!(z1 <= z0);
            }
        }
    }

    #[test]
    fn eh_searches_agree((ay, az) in sequence_pair(), r in 0usize..5) {
        let brute = eh_exists_brute(&ay, &az, r).unwrap();
        let greedy = eh_exists_greedy(&ay, &az, r).unwrap();
        prop_assert_eq!(brute.exists, greedy.exists);
    }

    #[test]
    fn small_components_rule_out_limit_series((ay, az) in sequence_pair(), r in 1usize..5) {
        let min_dim = components_by_maximality(&ay, &az).unwrap().iter().map(|c| c.dim).min();
        if min_dim.is_some_and(|m| m < r) {
            prop_assert!(!eh_exists_brute(&ay, &az, r).unwrap().exists);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_roundtrip(seed in any::<u64>(), r in 0usize..4, d in 0usize..6, raw in prop::collection::vec(0usize..100, 4)) {
        let mut jumps: Vec<usize> = raw[..=r].iter().map(|x| x % (d + 1)).collect();
        jumps.sort_unstable();
        let series = generate_exact(seed, r, d, &jumps).unwrap();
        prop_assert!(series.validate().passed());
        prop_assert_eq!(series.exact_by_subspaces(), series.exact_by_dimensions());
        let diag = series.diagonalize().unwrap();
        prop_assert_eq!(&diag.jump_indices, &jumps);
        prop_assert!(series.pg_union().unwrap().is_full());
    }

    #[test]
    fn jumps_are_where_the_boundary_is_not_everything(seed in any::<u64>(), r in 0usize..4, d in 0usize..6, raw in prop::collection::vec(0usize..100, 4)) {
        let mut jumps: Vec<usize> = raw[..=r].iter().map(|x| x % (d + 1)).collect();
        jumps.sort_unstable();
        let series = generate_exact(seed, r, d, &jumps).unwrap();
        for i in 0..=d {
            let (y, z) = series.boundary_subspaces(i).unwrap();
            let quotient = r + 1 - y.sum(&z).unwrap().dim();
            prop_assert!(y.intersection(&z).unwrap().is_zero());
            prop_assert_eq!(quotient, jumps.iter().filter(|&&j| j == i).count());
        }
    }

    #[test]
    fn rescaled_diagonal_matches_specialization(r in 0usize..5, seed in any::<u64>(), z0 in small_rat()) {
        prop_assume!(z0 != rational::rat(0));
        let specs = enumerate_specs(r, true);
        let fam = DegenerationFamily::new(&specs[(seed % specs.len() as u64) as usize]).unwrap();
        let eps = fam.epsilons();
        for g in fam.specialize(&z0) {
            // y_j -> z0^{e_j} y_j turns x_i y_j - x_j y_i into
            // z0^{e_j} x_i y_j - z0^{e_i} x_j y_i.
            let lead = rational::pow(&z0, eps[g.j]);
            let trail = rational::pow(&z0, eps[g.i]);
            prop_assert_eq!(&trail / &lead, g.trail / g.lead);
        }
    }

    #[test]
    fn limit_is_identity_on_generic_points(r in 0usize..5, seed in any::<u64>()) {
        let specs = enumerate_specs(r, true);
        let spec = &specs[(seed % specs.len() as u64) as usize];
        let fam = DegenerationFamily::new(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..spec.mults().len() {
            let pt = random_point(&mut rng, spec, k);
            prop_assert_eq!(fam.limit_of_point(&pt, k).unwrap(), pt);
        }
    }
}

#[test]
fn full_unions_have_the_hilbert_polynomial_of_the_diagonal() {
    use llab_core::exactmath::{binom_poly, BinomVar};
    for r in 0..=5 {
        for spec in enumerate_specs(r, true) {
            assert_eq!(hilbert_union(&spec), binom_poly(BinomVar::SPlusT, r as i64, r as u32));
        }
    }
    assert!(make_union_spec(3, &[4]).is_err());
}
