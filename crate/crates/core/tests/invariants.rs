use hcbridge::algebra_models::{fixture, parse_model, serialize_model, AlgebraModel};
use hcbridge::cli_harness::suites::{random_chain, total_differential};
use hcbridge::hochschild::{connes_b, delta, Chain, Path, UChain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODELS: &[&str] = &["ground", "eps", "dual", "xy", "m2", "ainf", "cone", "moment"];

fn sum(a: &Chain, b: &Chain) -> Chain {
    let mut s = a.clone();
    for (t, c) in b {
        s.add_term(t.clone(), c.clone());
    }
    s
}

fn model(i: usize) -> (AlgebraModel, Path) {
    let m = fixture(MODELS[i % MODELS.len()]).unwrap();
    let p = Path::for_model(&m);
    (m, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_complex_identities(i in 0usize..8, seed: u64) {
        let (m, p) = model(i);
        let x = random_chain(&m, &mut ChaCha8Rng::seed_from_u64(seed), 6, 4);
        let dx = delta(&m, p, &x);
        let bx = connes_b(&m, &x);
        prop_assert!(delta(&m, p, &dx).is_zero());
        prop_assert!(connes_b(&m, &bx).is_zero());
        prop_assert!(sum(&delta(&m, p, &bx), &connes_b(&m, &dx)).is_zero());
    }

    #[test]
    fn total_differential_squares_to_zero(i in 0usize..8, seed: u64, powers in 0usize..3) {
        let (m, p) = model(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = UChain::new();
        for j in 0..=powers {
            for (t, c) in &random_chain(&m, &mut rng, 3, 3) {
                x.add_term((j, t.clone()), c.clone());
            }
        }
        let dd = total_differential(&m, p, &total_differential(&m, p, &x));
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn bar_path_agrees_with_dga_path(i in 0usize..8, seed: u64) {
        let (m, p) = model(i);
        prop_assume!(p == Path::Dga);
        let a = m.as_a_infinity();
        let x = random_chain(&m, &mut ChaCha8Rng::seed_from_u64(seed), 6, 4);
        prop_assert_eq!(delta(&m, Path::Dga, &x), delta(&a, Path::Bar, &x));
    }
}

#[test]
fn models_survive_serialization() {
    for name in MODELS {
        let m = fixture(name).unwrap();
        let text = serialize_model(&m);
        let back = parse_model(&text).unwrap();
        assert_eq!(serialize_model(&back), text, "{name}");
        assert_eq!(back.dim(), m.dim());
    }
}
