use matchsat::branch::{branch_rule1, branch_rule2, measure, solve, SolverConfig};
use matchsat::genoracle::{brute_maxsat, hypergraph_to_cnf};
use matchsat::hitset::{
    brute_min_hitting_set, exact_mini_search, extend_to_hitting_set, find_mini_hitting_set,
    solve_m_minus_k, HitConfig, HitMode, Hypergraph, MiniOutcome,
};
use matchsat::incidence::{build_incidence, find_autarky, is_q_expanding, matching_number};
use matchsat::reduce::{apply_first_rule, normalize_polarity, reduce_exhaustively, simplify};
use matchsat::{parse_dimacs, Clause, CnfFormula, Instance, Literal};
use proptest::prelude::*;

fn formula(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_vars).prop_flat_map(move |n| {
        let clause = prop::collection::btree_map(1..=n, any::<bool>(), 1..=4usize.min(n as usize))
            .prop_map(|lits| {
                Clause::new(
                    lits.into_iter()
                        .map(|(var, positive)| Literal { var, positive }),
                )
                .unwrap()
            });
        prop::collection::vec(clause, 0..=max_clauses)
            .prop_map(move |cs| CnfFormula::new(n, cs).unwrap())
    })
}

fn hypergraph(max_vertices: u32, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let edge = prop::collection::btree_set(1..=n, 1..=n as usize)
            .prop_map(|e| e.into_iter().collect::<Vec<_>>());
        prop::collection::vec(edge, 0..=max_edges)
            .prop_map(move |es| Hypergraph::new(n, es).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matching_is_a_lower_bound(f in formula(8, 14)) {
        prop_assert!(brute_maxsat(&f).unwrap() >= matching_number(&f));
    }

    #[test]
    fn dimacs_round_trip(f in formula(8, 10)) {
        prop_assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn every_rule_step_is_valid(f in formula(8, 14)) {
        let mut cur = Instance::new(f, 0);
        while let Some(out) = apply_first_rule(&cur).unwrap() {
            let before = brute_maxsat(&cur.formula).unwrap() as i64;
            let after = brute_maxsat(&out.instance.formula).unwrap() as i64;
            prop_assert_eq!(before, after + out.alpha_offset);
            prop_assert!(measure(&out.instance) <= measure(&cur));
            cur = out.instance;
        }
        let g = build_incidence(&cur.formula);
        prop_assert!(cur.formula.is_empty() || is_q_expanding(&g, 2).unwrap());
    }

    #[test]
    fn autarky_postconditions(f in formula(8, 12)) {
        let a = find_autarky(&f);
        for &c in &a.satisfied_clauses {
            prop_assert!(f.clauses()[c].is_satisfied_by(&a.assignment));
        }
        prop_assert_eq!(a.satisfied_clauses.clone(), f.clauses_touching(&a.domain));
        let rest = f.without_clauses(&a.satisfied_clauses);
        prop_assert!(is_q_expanding(&build_incidence(&rest), 1).unwrap());
    }

    #[test]
    fn branch_children_lower_measure(f in formula(7, 14)) {
        let reduced = reduce_exhaustively(&Instance::new(f, 0)).unwrap();
        let mu = measure(&reduced);
        if let Some(b) = branch_rule1(&reduced) {
            for c in &b.children {
                prop_assert!(measure(c) < mu);
            }
        } else if let Ok(norm) = normalize_polarity(&reduced.formula) {
            let inst = Instance { formula: norm.formula, ..reduced.clone() };
            if let Some(b) = branch_rule2(&inst) {
                for c in &b.children {
                    prop_assert!(measure(c) < mu);
                }
            }
        }
    }

    #[test]
    fn simplify_accounts_for_satisfied_clauses(f in formula(6, 10), value: bool) {
        if let Some(&v) = f.live_vars().first() {
            let inst = Instance::new(f.clone(), 0);
            let out = simplify(&inst, v, value);
            let satisfied = f.clauses().iter().filter(|c| c.contains(Literal { var: v, positive: value })).count();
            prop_assert_eq!(-out.alpha, satisfied as i64);
            prop_assert!(out.formula.clauses().iter().all(|c| !c.contains_var(v)));
        }
    }

    #[test]
    fn normalize_is_an_involution(f in formula(7, 12)) {
        if let Ok(norm) = normalize_polarity(&f) {
            prop_assert_eq!(brute_maxsat(&norm.formula).unwrap(), brute_maxsat(&f).unwrap());
            prop_assert_eq!(norm.formula.flip_variables(&norm.flipped), f);
        }
    }

    #[test]
    fn solver_matches_brute_force(f in formula(8, 16), k in -1i64..=3, parallel: bool, exact: bool) {
        let nu = matching_number(&f) as i64;
        let cfg = SolverConfig {
            parallel,
            mode: if exact { HitMode::Exact } else { HitMode::Randomized },
            ..SolverConfig::default()
        };
        let r = solve(&Instance::new(f.clone(), nu + k), &cfg).unwrap();
        prop_assert_eq!(r.answer, brute_maxsat(&f).unwrap() as i64 >= nu + k);
    }

    #[test]
    fn hitting_set_agrees_with_brute_force(h in hypergraph(7, 9), k in 0i64..=4, seed: u64) {
        let tau = brute_min_hitting_set(&h).unwrap().len() as i64;
        let m = h.num_edges() as i64;
        let cfg = HitConfig { seed, ..HitConfig::default() };
        let ans = solve_m_minus_k(&h, k, &cfg);
        prop_assert_eq!(ans.exists, tau <= m - k);
        if let Some(hs) = ans.hitting_set {
            prop_assert!(h.is_hitting_set(&hs));
            prop_assert!(hs.len() as i64 <= (m - k).max(m));
        }
    }

    #[test]
    fn randomized_hits_are_valid(h in hypergraph(6, 8), k in 1i64..=3, seed: u64) {
        let cfg = HitConfig { seed, ..HitConfig::default() };
        match find_mini_hitting_set(&h, k, &cfg).unwrap() {
            MiniOutcome::Found(mini) => {
                prop_assert!(mini.is_valid(&h, k));
                let hs = extend_to_hitting_set(&h, &mini, k).unwrap();
                prop_assert!(h.is_hitting_set(&hs));
                prop_assert!(hs.len() as i64 <= h.num_edges() as i64 - k);
            }
            MiniOutcome::NotFound | MiniOutcome::Inconclusive => {}
            MiniOutcome::Absent => prop_assert!(false, "randomized mode never certifies absence"),
        }
        // a randomized find implies the exact search finds one too
        if let MiniOutcome::Found(_) = find_mini_hitting_set(&h, k, &cfg).unwrap() {
            prop_assert!(exact_mini_search(&h, k).is_some());
        }
    }

    #[test]
    fn reduction_equivalence(h in hypergraph(6, 7), k in 0i64..=3) {
        let f = hypergraph_to_cnf(&h);
        let n = h.num_vertices() as i64;
        prop_assert_eq!(matching_number(&f) as i64, n);
        let tau = brute_min_hitting_set(&h).unwrap().len() as i64;
        let by_sat = brute_maxsat(&f).unwrap() as i64 >= n + k;
        prop_assert_eq!(by_sat, tau <= h.num_edges() as i64 - k);
    }
}
