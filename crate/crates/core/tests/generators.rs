use hypermatch_core::instances::{generate, GeneratorMode, GeneratorSpec};
use hypermatch_core::oracles::{brute_force_perfect_matching, check_haxell, HaxellMode, HaxellStatus};
use hypermatch_core::ratio::parse_rational;

#[test]
fn guaranteed_instances_satisfy_the_condition() {
    for seed in 0..40u64 {
        let r = 2 + (seed % 3) as usize;
        let a = 1 + (seed % 10) as usize;
        let eps = parse_rational(["1", "1/2", "1/4"][(seed % 3) as usize]).unwrap();
        let d = hypermatch_core::instances::default_private_degree(r, &eps);
        let mut spec = GeneratorSpec::new(GeneratorMode::Guaranteed, r, a, d * (r - 1) * a + 4, seed);
        spec.extra_edges = (seed % 7) as usize;
        let h = generate(&spec, &eps).unwrap();
        assert!(h.edge_count() >= d * a);
        assert_eq!(
            check_haxell(&h, &eps, HaxellMode::Strengthened, 20).unwrap(),
            HaxellStatus::Satisfied,
            "seed {seed}"
        );
    }
}

#[test]
fn planted_instances_have_perfect_matchings() {
    let eps = parse_rational("1").unwrap();
    for seed in 0..60u64 {
        let r = 2 + (seed % 3) as usize;
        let a = 1 + (seed % 9) as usize;
        let mut spec = GeneratorSpec::new(GeneratorMode::Planted, r, a, (r - 1) * a + (seed % 4) as usize, seed);
        spec.extra_edges = (seed % 13) as usize;
        let h = generate(&spec, &eps).unwrap();
        assert!(brute_force_perfect_matching(&h, 20).unwrap().is_some(), "seed {seed}");
    }
}

#[test]
fn generators_are_deterministic() {
    let eps = parse_rational("1/2").unwrap();
    for mode in [
        GeneratorMode::Planted,
        GeneratorMode::Guaranteed,
        GeneratorMode::Graph,
        GeneratorMode::Adversarial,
    ] {
        let r = if mode == GeneratorMode::Graph { 2 } else { 3 };
        let mut spec = GeneratorSpec::new(mode, r, 5, 60, 1234);
        spec.extra_edges = 9;
        let first = generate(&spec, &eps).unwrap();
        let second = generate(&spec, &eps).unwrap();
        assert_eq!(first.edges(), second.edges());
        spec.seed = 1235;
        assert_ne!(generate(&spec, &eps).unwrap().edges(), first.edges(), "{mode:?}");
    }
}

#[test]
fn adversarial_instances_violate_the_condition() {
    let eps = parse_rational("1").unwrap();
    for seed in 0..40u64 {
        let r = 2 + (seed % 3) as usize;
        let a = 2 + (seed % 8) as usize;
        let spec = GeneratorSpec::new(GeneratorMode::Adversarial, r, a, a + r, seed);
        let h = generate(&spec, &eps).unwrap();
        assert!(matches!(
            check_haxell(&h, &eps, HaxellMode::Strengthened, 20).unwrap(),
            HaxellStatus::Violated { .. }
        ));
    }
}
