use etsearch::oracle::{brute_force_ets, random_graph, GenSpec};
use etsearch::{build_expansion_table, compute_bounds, full_report, run, BoundMode, DegreeProfile, SearchConfig};

fn irregular(seed: u64) -> etsearch::TannerGraph {
    random_graph(&GenSpec {
        var_degrees: [vec![2; 9], vec![3; 9], vec![4; 4], vec![5; 2]].concat(),
        m: 18,
        max_check_degree: 6,
        girth_min: 6,
        seed,
    })
    .unwrap()
}

#[test]
fn heuristic_grid_cells_follow_their_own_caps() {
    let profile = DegreeProfile::from_var_degrees(&[2, 3, 5, 10]).unwrap();
    let v = compute_bounds(&profile, 6, 7, 2, BoundMode::Heuristic).unwrap();
    let caps: Vec<(usize, usize)> = v.per_a.iter().map(|(&a, &b)| (a, b)).collect();
    assert_eq!(caps, [(3, 9), (4, 9), (5, 8), (6, 5), (7, 2)]);
    let t = build_expansion_table(&v, 6);
    // hand-evaluated against the caps above
    assert_eq!(t.cell_label(3, 1), "lo_3, lo_4");
    assert_eq!(t.cell_label(3, 6), "dot, pa_2, pa_3, lo_3");
    assert_eq!(t.cell_label(3, 9), "dot, pa_2");
    assert_eq!(t.cell_label(4, 7), "dot, pa_2");
    assert_eq!(t.cell_label(6, 5), "dot");
    assert_eq!(t.cell_label(7, 2), "-");
    assert_eq!(t.grid(&v).len(), 10);
}

#[test]
fn report_rows_match_the_oracle() {
    for seed in 0..4 {
        let g = irregular(seed);
        let cfg = SearchConfig::new(6, 2);
        let rows = full_report(&g, &cfg).unwrap();
        let expected = brute_force_ets(&g, 6, 2).unwrap().census.rows(2);
        assert_eq!(rows, expected, "seed {seed}");
        assert!(rows.iter().all(|r| r.a >= 2));
    }
}

#[test]
fn truncated_bounds_are_caught_by_the_oracle() {
    let mut caught = 0;
    for seed in 0..6 {
        let g = irregular(seed);
        let oracle = brute_force_ets(&g, 6, 2).unwrap().census;
        let mut cfg = SearchConfig::new(6, 2).with_min_a(1);
        cfg.bound_truncation = 6;
        let diff = run(&g, &cfg).unwrap().census(&g).diff(&oracle);
        assert!(diff.iter().all(|d| d.contains("missing")), "{diff:?}");
        caught += usize::from(!diff.is_empty());
    }
    assert!(caught > 0);
}

#[test]
fn range_below_half_girth_yields_only_trees() {
    let g = irregular(1);
    let out = run(&g, &SearchConfig::new(2, 2).with_min_a(1)).unwrap();
    assert!(out.lets.bounds.is_none());
    assert!(out.lets.store.is_empty());
    let census = out.census(&g);
    assert_eq!(census, brute_force_ets(&g, 2, 2).unwrap().census);
}
