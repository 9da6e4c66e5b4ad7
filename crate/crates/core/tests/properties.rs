use proptest::prelude::*;

use qutrit_mdc::code::{codeword, graph_code, is_self_dual, AdditiveCode, GeneratorMatrix};
use qutrit_mdc::field::{trace_hermitian, trace_hermitian_vec, F3Vector, F9Vector, F3, F9};
use qutrit_mdc::graph::{build_graph, is_nested_block_circulant, nested_block_predicate, GroupShape, MdcSpec};
use qutrit_mdc::packed::PackedVec;
use qutrit_mdc::search::inverse_pair_orbits;

fn f9() -> impl Strategy<Value = F9> {
    (0u8..9).prop_map(|t| F9::from_token_value(t).unwrap())
}

fn f3() -> impl Strategy<Value = F3> {
    (0u8..3).prop_map(F3::new)
}

fn vec_pair(max: usize) -> impl Strategy<Value = (F9Vector, F9Vector)> {
    (1..=max).prop_flat_map(|n| {
        (prop::collection::vec(f9(), n), prop::collection::vec(f9(), n))
            .prop_map(|(a, b)| (F9Vector::new(a), F9Vector::new(b)))
    })
}

fn shape() -> impl Strategy<Value = GroupShape> {
    prop::collection::vec(2usize..7, 1..=3)
        .prop_filter("order at most 40", |m| m.iter().product::<usize>() <= 40)
        .prop_map(|m| GroupShape::new(m).unwrap())
}

/// A valid spec: a random union of negation orbits.
fn spec() -> impl Strategy<Value = MdcSpec> {
    shape()
        .prop_flat_map(|shape| {
            let p = inverse_pair_orbits(&shape).len();
            (Just(shape), prop::collection::vec(any::<bool>(), p), any::<bool>())
        })
        .prop_map(|(shape, pick, bordered)| {
            let basis = inverse_pair_orbits(&shape);
            let mask = pick.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |m, (i, _)| m | 1 << i);
            basis.spec_for_mask(mask, bordered)
        })
}

proptest! {
    #[test]
    fn f9_distributes(x in f9(), y in f9(), z in f9()) {
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!((x + y) * z, x * z + y * z);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(x in f9(), y in f9()) {
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
    }

    #[test]
    fn trace_hermitian_is_alternating_and_bilinear((u, v) in vec_pair(12), w in prop::collection::vec(f9(), 12), a in f3(), b in f3()) {
        let n = u.len();
        let w = F9Vector::new(w[..n].to_vec());
        prop_assert!(trace_hermitian_vec(&u, &u).unwrap().is_zero());
        let uv = trace_hermitian_vec(&u, &v).unwrap();
        prop_assert_eq!(trace_hermitian_vec(&v, &u).unwrap(), -uv);
        let combo = u.scale(a).add(&v.scale(b)).unwrap();
        let lhs = trace_hermitian_vec(&combo, &w).unwrap();
        let rhs = a * trace_hermitian_vec(&u, &w).unwrap() + b * trace_hermitian_vec(&v, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn packed_ops_match_field((u, v) in vec_pair(150), a in f3()) {
        let pu = PackedVec::from_f9(&u);
        let pv = PackedVec::from_f9(&v);
        prop_assert_eq!(pu.to_f9(), u.clone());
        let mut sum = pu.clone();
        sum.add_scaled(&pv, a);
        prop_assert_eq!(sum.to_f9(), u.add(&v.scale(a)).unwrap());
        prop_assert_eq!(pu.weight(), u.weight());
        let h = u.entries().iter().zip(v.entries()).fold(F3::ZERO, |acc, (&x, &y)| acc + trace_hermitian(x, y));
        prop_assert_eq!(pu.symplectic(&pv), h);
    }

    #[test]
    fn vertex_indexing_is_a_bijection(shape in shape()) {
        for (i, e) in shape.elements().enumerate() {
            prop_assert_eq!(shape.vertex_index(&e).unwrap(), i);
            prop_assert_eq!(shape.index_vertex(i).unwrap(), e);
        }
    }

    #[test]
    fn built_graphs_are_regular_nested_circulants(spec in spec()) {
        prop_assert!(spec.validate().is_ok());
        let g = build_graph(&spec).unwrap();
        let m = g.adjacency_matrix();
        let n = spec.shape().order();
        for (i, row) in m.iter().enumerate() {
            prop_assert_eq!(row[i], 0);
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, m[j][i]);
            }
        }
        for i in 0..n {
            prop_assert_eq!(g.degree(i), spec.valency() + usize::from(spec.bordered()));
        }
        if spec.bordered() {
            prop_assert_eq!(g.degree(n), n);
            let base: Vec<Vec<u8>> = m[..n].iter().map(|r| r[..n].to_vec()).collect();
            prop_assert!(is_nested_block_circulant(&base, spec.shape().moduli()).unwrap());
        } else {
            prop_assert!(nested_block_predicate(&g, spec.shape()).unwrap());
        }
    }

    #[test]
    fn graph_codes_are_self_dual(spec in spec(), two in any::<bool>()) {
        let g = build_graph(&spec).unwrap();
        let weight = if two { F3::TWO } else { F3::ONE };
        let code = AdditiveCode::new(graph_code(&g, weight).unwrap());
        let report = is_self_dual(&code);
        prop_assert!(report.self_dual);
        prop_assert_eq!(report.rank, spec.length());
        prop_assert_eq!(report.violation, None);
    }

    #[test]
    fn codewords_are_linear(spec in spec(), seed in any::<u64>()) {
        let code = AdditiveCode::from_graph(&build_graph(&spec).unwrap());
        let n = code.n();
        let coeffs = |s: u64| F3Vector::new((0..n).map(|i| F3::new(((s >> (i % 64)) % 3) as u8)).collect());
        let (a, b) = (coeffs(seed), coeffs(seed.rotate_left(17)));
        let sum = F3Vector::new(a.entries().iter().zip(b.entries()).map(|(&x, &y)| x + y).collect());
        let lhs = codeword(&code, &sum).unwrap();
        let rhs = codeword(&code, &a).unwrap().add(&codeword(&code, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_files_round_trip(rows in (1usize..10).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(f9(), n), n))) {
        let rows: Vec<F9Vector> = rows.into_iter().map(F9Vector::new).collect();
        let gen = GeneratorMatrix::from_rows(&rows).unwrap();
        let parsed = GeneratorMatrix::parse_matrix_file(&gen.to_matrix_file()).unwrap();
        prop_assert_eq!(parsed.to_rows(), rows);
    }
}
