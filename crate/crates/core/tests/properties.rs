use proptest::prelude::*;

use udr_fusion::abelian::{self, AbelianParams, Character, CharacterPair};
use udr_fusion::cohomology;
use udr_fusion::deformation::{self, UdrClass};
use udr_fusion::dihedral::{self, DihedralParams, RepLabel};
use udr_fusion::ff;
use udr_fusion::fusion;

/// `(params, i0)` with n in [3, 12] and one of the two smallest primes.
fn instance() -> impl Strategy<Value = (DihedralParams, usize)> {
    (3usize..=12, 0usize..2)
        .prop_map(|(n, k)| {
            let p = ff::primes_congruent_to_one(n as u64, 2).unwrap()[k];
            DihedralParams::new(n, p).unwrap()
        })
        .prop_flat_map(|params| {
            let top = (params.n() - 1) / 2;
            (Just(params), 1..=top)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_partition_and_orbit_stabilizer((params, i0) in instance()) {
        let set = fusion::fusion_orbits_bruteforce(&params, i0).unwrap();
        prop_assert!(set.check_invariants().is_ok());
        let closed = fusion::fusion_orbits_closed_form(&params, i0).unwrap();
        prop_assert!(closed.check_invariants().is_ok());
        prop_assert_eq!(set.partition(), closed.partition());
        let numbers = fusion::fusion_numbers(&set);
        prop_assert_eq!(numbers.weighted_total(), params.p() * params.p());
    }

    #[test]
    fn orbit_sizes_are_1_k_2k((params, i0) in instance()) {
        let k = fusion::orbit_parameter(params.n(), i0);
        let set = fusion::fusion_orbits_closed_form(&params, i0).unwrap();
        for o in &set.orbits {
            prop_assert!([1, k, 2 * k].contains(&o.size));
        }
    }

    #[test]
    fn same_fusion_matches_orbit_sizes((params, i0) in instance(), j in 1usize..6) {
        prop_assume!(params.check_index(j).is_ok());
        let a = fusion::orbit_size_multiset(&fusion::fusion_orbits_closed_form(&params, i0).unwrap());
        let b = fusion::orbit_size_multiset(&fusion::fusion_orbits_closed_form(&params, j).unwrap());
        prop_assert_eq!(fusion::same_fusion(&params, j, i0).unwrap(), a == b);
    }

    #[test]
    fn dims_shape_and_t_map((params, i0) in instance()) {
        for j in params.irr2_indices() {
            let d = cohomology::dims(&params, i0, j).unwrap();
            prop_assert!(d.d1 <= 1);
            prop_assert_eq!(d.d2, d.d1 + 1);
            let hit = dihedral::t_map(&params, j).unwrap() == RepLabel::Irr2(i0);
            prop_assert_eq!(d.d1 == 1, hit);
            let class = deformation::udr_class(&params, i0, j).unwrap();
            prop_assert_eq!(class == UdrClass::ZpTtorsion, hit);
        }
    }

    #[test]
    fn signature_fiber((params, i0) in instance()) {
        let sig = deformation::udr_signature(&params, i0).unwrap();
        let domain: Vec<usize> = sig.per_rep.keys().copied().collect();
        prop_assert_eq!(domain, params.irr2_indices().collect::<Vec<_>>());
        if dihedral::omega_set(&params).contains(&i0) {
            let maximal = cohomology::cohomologically_maximal_set(&params, i0).unwrap();
            prop_assert_eq!(&sig.non_zp(), &maximal);
            prop_assert_eq!(sig.non_zp(), dihedral::t_preimage(&params, i0).unwrap());
        } else {
            prop_assert!(sig.non_zp().is_empty());
        }
        prop_assert!(deformation::verify_cor_34(&params, i0).unwrap().passed);
    }

    #[test]
    fn kernel_order_is_gcd((params, i0) in instance()) {
        let k = dihedral::kernel_invariant(&params, i0).unwrap();
        prop_assert_eq!(k.kernel.order, k.gcd);
    }

    #[test]
    fn lemma410_even_n(half in 2usize..=20, d in 1usize..10) {
        let n = 2 * half;
        let i0 = 2 * d;
        prop_assume!(dihedral::in_omega(n, i0));
        prop_assert!(deformation::verify_lemma_410(n, i0).unwrap().passed);
    }

    #[test]
    fn determinability_is_p_independent(half in 2usize..=15) {
        let n = 2 * half;
        let [p1, p2] = ff::primes_congruent_to_one(n as u64, 2).unwrap()[..] else { unreachable!() };
        let a = deformation::fusion_determinability(&DihedralParams::new(n, p1).unwrap()).unwrap();
        let b = deformation::fusion_determinability(&DihedralParams::new(n, p2).unwrap()).unwrap();
        prop_assert_eq!(a.passed, b.passed);
        prop_assert_eq!(a.passed, deformation::determinability_predicate(n));
    }

    #[test]
    fn abelian_pairs(m in 1usize..=10, a in 0usize..10, b in 0usize..10, v in 0usize..10) {
        let params = AbelianParams::smallest(vec![m]).unwrap();
        let chars = params.characters();
        let pick = |k: usize| chars[k % chars.len()].clone();
        let pair = CharacterPair::new(pick(a), pick(b));
        let p = params.p();
        let j = pair.trivial_count();
        prop_assert_eq!(abelian::abelian_fixed_count(&pair, p), abelian::fixed_points_bruteforce(&params, &pair));
        prop_assert_eq!(abelian::abelian_fixed_count(&pair, p), p.pow(j));
        let dims = abelian::abelian_dims(&pair);
        prop_assert_eq!(abelian::abelian_dims_by_projector(&params, &pair, &pick(v)).unwrap(), dims);
        let expected = match dims.d1 {
            0 => UdrClass::Zp,
            1 => UdrClass::ZpCp,
            _ => UdrClass::ZpCpSquared,
        };
        prop_assert_eq!(abelian::abelian_udr(&pair), expected);
        let orbits = abelian::abelian_orbits_bruteforce(&params, &pair).unwrap();
        prop_assert!(orbits.check_invariants().is_ok());
    }

    #[test]
    fn abelian_product_groups(a in 0usize..36, b in 0usize..36) {
        let params = AbelianParams::new(vec![2, 6], 7).unwrap();
        let chars = params.characters();
        prop_assert_eq!(chars.len(), 12);
        let pair = CharacterPair::new(chars[a % 12].clone(), chars[b % 12].clone());
        let triv = Character::trivial(&params);
        prop_assert_eq!(
            abelian::abelian_dims_by_projector(&params, &pair, &triv).unwrap(),
            abelian::abelian_dims(&pair)
        );
        prop_assert_eq!(
            abelian::fixed_points_bruteforce(&params, &pair),
            abelian::abelian_fixed_count(&pair, 7)
        );
    }
}
