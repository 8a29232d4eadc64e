use num_rational::Rational64;
use proptest::prelude::*;

use frs_core::algebra::Field;
use frs_core::codes::{corrupt, CodeParams, FrsParams, MultParams, RecoverySets};
use frs_core::decoder::{list_decode, list_recover, radius_threshold};
use frs_core::oracle::{brute_force_list, OracleBudget};
use frs_core::prune::{enumerate_list, prune, PruneConfig};
use frs_core::rng::trial_rng;
use frs_core::schema::{from_json, to_json, ParamsFile, SpaceFile, WordFile};

fn small_codes() -> Vec<CodeParams> {
    vec![
        FrsParams::new(Field::new(13).unwrap(), 3, 4, 3).unwrap().into(),
        FrsParams::new(Field::new(11).unwrap(), 2, 5, 3).unwrap().into(),
        MultParams::new(Field::new(11).unwrap(), 2, 5, 3, None).unwrap().into(),
        MultParams::new(Field::new(13).unwrap(), 3, 4, 4, None).unwrap().into(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Everything the brute force finds within the decoder's tolerance lies
    /// in the candidate space, and enumeration recovers exactly that list.
    #[test]
    fn brute_force_list_lies_in_candidate_space(code in 0usize..4, m in 1usize..3, seed in any::<u64>(), errors in 0usize..3) {
        let params = &small_codes()[code];
        let field = *params.field();
        let limit = radius_threshold(params, m, 1).unwrap().max_errors;
        let mut rng = trial_rng(seed, 0);
        let c = params.encode(&params.random_message(&mut rng)).unwrap();
        let y = corrupt(&field, &c, errors.min(params.n()), &mut rng).unwrap();
        let sets = RecoverySets::from_word(&y);
        let rho = Rational64::new(limit as i64, params.n() as i64);
        let truth = brute_force_list(params, &sets, rho, OracleBudget::default()).unwrap();
        let space = list_decode(params, &y, m).unwrap();
        for f in &truth {
            prop_assert!(space.contains(&field, f));
        }
        prop_assert_eq!(enumerate_list(params, &space, &sets, rho, 1 << 20).unwrap(), truth);
    }

    /// Decode output survives the JSON round trip unchanged.
    #[test]
    fn decode_round_trips_through_json(code in 0usize..4, seed in any::<u64>()) {
        let params = &small_codes()[code];
        let file = ParamsFile::from_params(params);
        let reread = from_json::<ParamsFile>(&to_json(&file)).unwrap().to_params().unwrap();
        prop_assert_eq!(&reread, params);
        let mut rng = trial_rng(seed, 1);
        let y = corrupt(params.field(), &params.encode(&params.random_message(&mut rng)).unwrap(), 1, &mut rng).unwrap();
        let y2 = from_json::<WordFile>(&to_json(&WordFile::from_word(&y))).unwrap().to_word(&reread).unwrap();
        let space = list_decode(&reread, &y2, 2).unwrap();
        let back = from_json::<SpaceFile>(&to_json(&SpaceFile::from_space(&space))).unwrap().to_space(params).unwrap();
        prop_assert_eq!(back, space);
    }
}

/// List recovery with two candidates per column: every message whose
/// codeword hits the sets often enough is found, and prune agrees with
/// enumeration.
#[test]
fn list_recovery_with_two_candidates() {
    let params: CodeParams = FrsParams::new(Field::new(31).unwrap(), 6, 5, 4).unwrap().into();
    let field = *params.field();
    let threshold = radius_threshold(&params, 5, 2).unwrap();
    assert!(threshold.min_agreement <= params.n());
    let rho = Rational64::new(threshold.max_errors as i64, params.n() as i64);
    for t in 0..20 {
        let mut rng = trial_rng(77, t);
        let f = params.random_message(&mut rng);
        let g = params.random_message(&mut rng);
        let (cf, cg) = (params.encode(&f).unwrap(), params.encode(&g).unwrap());
        let sets: Vec<Vec<Vec<_>>> = (0..params.n())
            .map(|i| {
                let mut set = vec![cf.column(i).to_vec()];
                if cg.column(i) != cf.column(i) {
                    set.push(cg.column(i).to_vec());
                }
                set
            })
            .collect();
        let sets = RecoverySets::new(2, sets).unwrap();
        let space = list_recover(&params, &sets, 5).unwrap();
        assert!(space.contains(&field, &f) && space.contains(&field, &g));
        let exact = enumerate_list(&params, &space, &sets, rho, 1 << 24).unwrap();
        assert!(exact.contains(&f) && exact.contains(&g));
        let pruned = prune(&params, &space, &sets, rho, &PruneConfig::new(0.5, 0.01, t).unwrap()).unwrap();
        assert_eq!(pruned, exact);
    }
}
