use hare::formats::{self, Format};
use hare_core::model::{IsingHamiltonian, QuboInstance, SpinConfiguration};
use proptest::prelude::*;

fn hamiltonian() -> impl Strategy<Value = IsingHamiltonian> {
    (1usize..12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (
            proptest::collection::vec(-50i64..=50, n),
            proptest::collection::vec(-50i64..=50, pairs.len()),
        )
            .prop_map(move |(h, j)| {
                let mut out = IsingHamiltonian::new(n);
                for (i, v) in h.into_iter().enumerate() {
                    out.add_field(i, v).unwrap();
                }
                for (&(a, b), v) in pairs.iter().zip(j) {
                    out.add_coupling(a, b, v).unwrap();
                }
                out
            })
    })
}

fn qubo() -> impl Strategy<Value = QuboInstance> {
    (1usize..10).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, -30i64..=30), 0..3 * n).prop_map(move |terms| {
            let mut q = QuboInstance::new(n);
            for (i, j, v) in terms {
                q.add(i, j, v).unwrap();
            }
            q
        })
    })
}

proptest! {
    #[test]
    fn ising_write_then_parse_is_identity(h in hamiltonian()) {
        let text = formats::write_ising(&h);
        prop_assert_eq!(Format::detect(&text), Format::Ising);
        prop_assert_eq!(formats::parse_ising(&text).unwrap(), h);
    }

    #[test]
    fn qubo_write_then_parse_is_identity(q in qubo()) {
        let text = formats::write_qubo(&q);
        prop_assert_eq!(Format::detect(&text), Format::Qubo);
        prop_assert_eq!(formats::parse_qubo(&text).unwrap(), q);
    }

    #[test]
    fn qubo_input_is_scaled_ising(q in qubo()) {
        let h = formats::parse(&formats::write_qubo(&q), Format::Qubo).unwrap();
        let (direct, offset) = q.to_ising().unwrap();
        prop_assert_eq!(&h, &direct);
        let n = q.num_vars();
        for mask in 0..1u64 << n {
            let x: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 0).collect();
            let s = SpinConfiguration::from_down_mask(n, mask);
            prop_assert_eq!(4 * q.value(&x).unwrap(), h.energy(&s).unwrap() + offset);
        }
    }
}

#[test]
fn maxcut_triangle_energies_give_cut_values() {
    let h = formats::parse("3 3\n1 2 1\n2 3 1\n1 3 1\n", Format::Mqlib).unwrap();
    let total = 3;
    let best = (0..8u64)
        .map(|m| (total - h.energy(&SpinConfiguration::from_down_mask(3, m)).unwrap()) / 2)
        .max()
        .unwrap();
    assert_eq!(best, 2);
}
