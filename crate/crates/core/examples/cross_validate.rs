use stable_cutset::branching::{solve_general, solve_scs, LeafSolver};
use stable_cutset::generators::{random_connected, RandomProfile};
use stable_cutset::mnc::solve_mnc;
use stable_cutset::oracle;

fn main() {
    let mut yes = 0u64;
    for seed in 0..3000u64 {
        let n = 8 + (seed % 5) as usize; // 8..=12
        let max = n * (n - 1) / 2;
        let m = (n - 1) + (seed.wrapping_mul(0x9e3779b97f4a7c15) % (max - n + 2) as u64) as usize;
        let g = random_connected(n, RandomProfile::EdgeBudget(m), seed).unwrap();
        let expected = oracle::brute_scs(&g).unwrap().is_some();
        let general = solve_general(&g).unwrap();
        let mnc = solve_mnc(&g).unwrap();
        let csp = solve_scs(&g, LeafSolver::Csp).unwrap();
        assert_eq!(general.has_cutset, expected, "general seed {seed} {g:?}");
        assert_eq!(mnc.has_cutset, expected, "mnc seed {seed} {g:?}");
        assert_eq!(csp.has_cutset, expected, "csp seed {seed} {g:?}");
        for v in [&general, &mnc, &csp] {
            if let Some(cert) = &v.certificate {
                assert!(g.verify_partition(cert).unwrap());
            }
        }
        yes += u64::from(expected);
    }
    println!("3000 graphs at n in 8..=12 agree with the oracle ({yes} yes)");
}
