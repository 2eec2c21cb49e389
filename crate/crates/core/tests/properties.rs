use proptest::prelude::*;
use veldkamp::gf2space::{all_subspaces, pg_line_count};
use veldkamp::hyperplanes::EnumerationOptions;
use veldkamp::pauli::{PauliElement, SignedPauli};
use veldkamp::{
    build_veldkamp_space, enumerate_hyperplanes, enumerate_hyperplanes_with, parse_edge_list, IncidenceStructure,
};

/// Connected graphs on 2..=max points: a random spanning tree plus extras.
fn graph(max: usize) -> impl Strategy<Value = IncidenceStructure> {
    (2..=max)
        .prop_flat_map(|p| {
            let tree = (1..p).map(|i| 0..i).collect::<Vec<_>>();
            let extra = proptest::collection::vec((0..p, 0..p), 0..p);
            (Just(p), tree, extra)
        })
        .prop_map(|(p, tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree.into_iter().enumerate().map(|(i, j)| (i + 1, j)).collect();
            for (a, b) in extra {
                let e = (a.max(b), a.min(b));
                if a != b && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            IncidenceStructure::new(p, edges).unwrap()
        })
}

/// Hyperplanes by direct evaluation of the axiom over every subset.
fn brute_force(s: &IncidenceStructure) -> Vec<u64> {
    let p = s.point_count();
    let mut out: Vec<u64> = (0..(1u64 << p) - 1)
        .filter(|&set| s.lines().iter().all(|&(a, b)| ((set >> a) & 1) + ((set >> b) & 1) >= 1))
        .collect();
    out.sort_by_key(|&b| (b.count_ones(), (0..p).filter(|i| (b >> i) & 1 == 1).collect::<Vec<_>>()));
    out
}

fn pauli(n: usize) -> impl Strategy<Value = PauliElement> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(x, z)| PauliElement::from_bits(n, x & mask, z & mask).unwrap())
}

fn signed(n: usize) -> impl Strategy<Value = SignedPauli> {
    (pauli(n), 0u8..4).prop_map(|(e, p)| SignedPauli::new(e, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(s in graph(12)) {
        let parsed = parse_edge_list(&s.to_edge_list()).unwrap();
        prop_assert!(!parsed.was_compacted());
        prop_assert_eq!(parsed.structure, s);
    }

    #[test]
    fn catalog_matches_brute_force_in_canonical_order(s in graph(10)) {
        let cat = enumerate_hyperplanes(&s).unwrap();
        let got: Vec<u64> = cat.hyperplanes().iter().map(|h| h.points.bits()).collect();
        prop_assert_eq!(got, brute_force(&s));
    }

    #[test]
    fn chunking_does_not_change_the_catalog(s in graph(12), k in 0usize..14) {
        let default = enumerate_hyperplanes(&s).unwrap();
        let opts = EnumerationOptions { chunk_bits: Some(k), ..Default::default() };
        let chunked = enumerate_hyperplanes_with(&s, opts).unwrap();
        prop_assert_eq!(default.hyperplanes(), chunked.hyperplanes());
    }

    #[test]
    fn lines_are_xor_closed_with_equal_intersections(s in graph(10)) {
        let space = build_veldkamp_space(enumerate_hyperplanes(&s).unwrap());
        let cat = space.catalog();
        for l in space.lines3() {
            let [a, b, c] = l.members();
            prop_assert_eq!(cat.complement_bits(a) ^ cat.complement_bits(b) ^ cat.complement_bits(c), 0);
            let (pa, pb, pc) = (cat.points(a), cat.points(b), cat.points(c));
            prop_assert_eq!(pa.intersection(&pb), pb.intersection(&pc));
            prop_assert_eq!(pa.intersection(&pb), pa.intersection(&pc));
        }
        let sum: usize = space.degrees().iter().sum();
        prop_assert_eq!(sum, 3 * space.lines3().len());
    }

    #[test]
    fn certified_subspaces_obey_the_line_law(s in graph(7)) {
        let space = build_veldkamp_space(enumerate_hyperplanes(&s).unwrap());
        for sub in all_subspaces(&space) {
            prop_assert_eq!(sub.len(), (1usize << (sub.dimension() + 1)) - 1);
            prop_assert_eq!(sub.induced_lines(&space).len(), pg_line_count(sub.dimension()));
        }
    }

    #[test]
    fn signed_products_form_a_group(a in signed(3), b in signed(3), c in signed(3)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let one = SignedPauli::hermitian(PauliElement::identity(3));
        prop_assert_eq!(a.mul(&one).unwrap(), a);
        prop_assert_eq!(one.mul(&a).unwrap(), a);
        // a Hermitian Pauli squares to the identity
        let h = SignedPauli::hermitian(a.element);
        prop_assert_eq!(h.mul(&h).unwrap().identity_sign(), Some(1));
    }

    #[test]
    fn commutation_follows_the_form(a in pauli(4), b in pauli(4), c in pauli(4)) {
        let (sa, sb) = (SignedPauli::hermitian(a), SignedPauli::hermitian(b));
        let same = sa.mul(&sb).unwrap() == sb.mul(&sa).unwrap();
        prop_assert_eq!(same, a.symplectic_form(&b).unwrap() == 0);
        prop_assert_eq!(a.symplectic_form(&b).unwrap(), b.symplectic_form(&a).unwrap());
        let bc = b.mul(&c).unwrap();
        prop_assert_eq!(a.symplectic_form(&bc).unwrap(), a.symplectic_form(&b).unwrap() ^ a.symplectic_form(&c).unwrap());
        prop_assert_eq!(a.symplectic_form(&a).unwrap(), 0);
    }

    #[test]
    fn pauli_strings_round_trip(a in pauli(6)) {
        let back: PauliElement = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
