use etsearch::oracle::{brute_force_ets, build_corpus, random_graph, read_manifest, write_manifest, GenSpec};
use etsearch::{emit_alist, gamma, Category, Census, Girth};

fn spec(seed: u64) -> GenSpec {
    GenSpec {
        var_degrees: [vec![2; 10], vec![3; 8], vec![4; 4], vec![5; 2]].concat(),
        m: 18,
        max_check_degree: 6,
        girth_min: 6,
        seed,
    }
}

#[test]
fn two_hundred_seeds_meet_the_spec() {
    for seed in 0..200 {
        let s = spec(seed);
        let g = random_graph(&s).unwrap();
        assert!(g.girth() >= Girth::Finite(6), "seed {seed}: girth {}", g.girth());
        let degrees: Vec<usize> = (0..g.n()).map(|v| g.var_degree(v)).collect();
        assert_eq!(degrees, s.var_degrees, "seed {seed}");
        assert!((0..g.m()).all(|c| g.chk_degree(c) <= s.max_check_degree), "seed {seed}");
        assert_eq!(emit_alist(&g), emit_alist(&random_graph(&s).unwrap()), "seed {seed}");
    }
}

#[test]
fn girth_eight_is_reachable_on_sparse_specs() {
    let g = random_graph(&GenSpec {
        var_degrees: vec![2; 12],
        m: 12,
        max_check_degree: 3,
        girth_min: 8,
        seed: 3,
    })
    .unwrap();
    assert!(g.girth() >= Girth::Finite(8));
}

#[test]
fn corpus_manifests_are_reproducible() {
    let a = write_manifest(&build_corpus(12, 99, (12, 30), &[2, 3, 4, 5]));
    let b = write_manifest(&build_corpus(12, 99, (12, 30), &[2, 3, 4, 5]));
    assert_eq!(a, b);
    let specs = read_manifest(&a).unwrap();
    assert_eq!(specs.len(), 12);
    for s in specs {
        assert!((12..=30).contains(&s.n));
        assert!(s.degree_counts.keys().all(|d| (2..=5).contains(d)));
        s.graph().unwrap();
    }
}

#[test]
fn oracle_cells_agree_with_recounted_classes() {
    for seed in 0..10 {
        let g = random_graph(&spec(seed)).unwrap();
        let result = brute_force_ets(&g, 5, 3).unwrap();
        let census: &Census = &result.census;
        assert!(census.total(Category::Ets) > 0);
        for (cls, sets) in &census.cells {
            assert!(cls.b <= 3 && cls.a <= 5);
            for key in sets.get(Category::Ets) {
                assert_eq!(key.len(), cls.a);
                assert_eq!(gamma(&g, key).unwrap().gamma_o.len(), cls.b, "seed {seed} {key:?}");
            }
            for cat in Category::ALL {
                assert!(sets.get(cat).is_subset(sets.get(Category::Ets)));
            }
        }
    }
}
