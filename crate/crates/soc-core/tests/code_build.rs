//! Generator-matrix construction, serialization, and an end-to-end
//! reproduction of the published 5×17 matrix for the (3, 2, 2, 1) shape.

mod common;

use common::{grid, is_degenerate, tower};
use soc_core::code::{build_code, codeword, dimension, Code, Provenance};
use soc_core::counts::{code_length, enumerate_defining_set};
use soc_core::error::Error;
use soc_core::ff::{make_tower, FieldTower, Params};
use soc_core::wdist::{wdist_closed, wdist_enumerate};
use std::collections::HashSet;

#[test]
fn built_shapes_match_closed_length_and_dimension() {
    for params in [
        Params::new(3, 4, 2, 2).unwrap(),
        Params::new(5, 2, 1, 2).unwrap(),
        Params::new(7, 2, 1, 1).unwrap(),
    ] {
        let t = make_tower(params).unwrap();
        let code = build_code(&t).unwrap();
        assert_eq!(code.n as i128, code_length(&params).unwrap());
        assert_eq!(code.k, params.dimension() as usize);
        assert_eq!(code.k, dimension(&code));
        let sf = code.alphabet();
        assert!(code.rows[0].iter().all(|&v| v == sf.one()));
    }
}

#[test]
fn rows_realize_the_defining_functionals() {
    let t = tower(5, 2, 1, 2);
    let code = build_code(&t).unwrap();
    let ds = enumerate_defining_set(&t).unwrap();
    let blocks = (t.params.s / t.params.s2) as usize;
    let encodings = code.row_encodings();
    assert_eq!(
        encodings[0],
        codeword(&t, &ds, 0, 0, 1).unwrap().entries
    );
    for j in 0..blocks {
        let w = t.omega_pow(j as u64);
        assert_eq!(
            encodings[1 + j],
            codeword(&t, &ds, w, 0, 0).unwrap().entries,
            "x block row {j}"
        );
        assert_eq!(
            encodings[1 + blocks + j],
            codeword(&t, &ds, 0, w, 0).unwrap().entries,
            "y block row {j}"
        );
    }
}

#[test]
fn degenerate_grid_shapes_are_rank_deficient() {
    let mut hit = 0;
    for params in grid(&[3, 5, 7], 4) {
        if !is_degenerate(&params) {
            continue;
        }
        hit += 1;
        let t = make_tower(params).unwrap();
        assert!(
            matches!(build_code(&t), Err(Error::RankDeficient { .. })),
            "{params:?}"
        );
    }
    assert_eq!(hit, 6);
}

#[test]
fn published_matrix_is_reproduced_under_its_own_modulus() {
    // The 17-column reference matrix was computed with the modulus x²+2x+2,
    // the second-smallest primitive choice here, and lists the defining set
    // by generator exponent with (0, 0) last. `None` encodes the zero
    // coordinate; other entries are powers of ω.
    let pairs: [(Option<u64>, Option<u64>); 17] = [
        (Some(0), Some(2)),
        (Some(0), Some(6)),
        (Some(1), Some(3)),
        (Some(1), Some(7)),
        (Some(2), Some(0)),
        (Some(2), Some(4)),
        (Some(3), Some(1)),
        (Some(3), Some(5)),
        (Some(4), Some(2)),
        (Some(4), Some(6)),
        (Some(5), Some(3)),
        (Some(5), Some(7)),
        (Some(6), Some(0)),
        (Some(6), Some(4)),
        (Some(7), Some(1)),
        (Some(7), Some(5)),
        (None, None),
    ];
    let reference: [[u16; 17]; 5] = [
        [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        [2, 2, 1, 1, 0, 0, 1, 1, 1, 1, 2, 2, 0, 0, 2, 2, 0],
        [1, 1, 0, 0, 1, 1, 1, 1, 2, 2, 0, 0, 2, 2, 2, 2, 0],
        [0, 0, 1, 2, 2, 1, 1, 2, 0, 0, 1, 2, 2, 1, 1, 2, 0],
        [1, 2, 1, 2, 1, 2, 0, 0, 1, 2, 1, 2, 1, 2, 0, 0, 0],
    ];

    let params = Params::new(3, 2, 2, 1).unwrap();
    let t = FieldTower::with_nth_modulus(params, 1).unwrap();
    assert_eq!(t.modulus, vec![2, 2, 1]);
    let g = t.generator();
    assert_eq!(t.mul(g, g), t.add(g, 1), "ω² = ω + 1 under this modulus");

    let decode = |c: Option<u64>| c.map_or(0, |e| t.omega_pow(e));
    let listed: Vec<(u64, u64)> = pairs.iter().map(|&(x, y)| (decode(x), decode(y))).collect();

    let ds = enumerate_defining_set(&t).unwrap();
    let mine: HashSet<(u64, u64)> = ds.pairs.iter().copied().collect();
    assert_eq!(mine, listed.iter().copied().collect::<HashSet<_>>());

    for (col, &(x, y)) in listed.iter().enumerate() {
        let expect = [
            1,
            t.trace(x, 1).unwrap(),
            t.trace(t.mul(x, g), 1).unwrap(),
            t.trace(y, 1).unwrap(),
            t.trace(t.mul(y, g), 1).unwrap(),
        ];
        for (row, &e) in expect.iter().enumerate() {
            assert_eq!(
                reference[row][col] as u64, e,
                "reference row {row} column {col}"
            );
        }
    }

    let code = build_code(&t).unwrap();
    let position: std::collections::HashMap<(u64, u64), usize> = listed
        .iter()
        .enumerate()
        .map(|(i, &pair)| (pair, i))
        .collect();
    for (row_idx, row) in code.rows.iter().enumerate() {
        for (my_col, &pair) in ds.pairs.iter().enumerate() {
            let ref_col = position[&pair];
            assert_eq!(
                row[my_col], reference[row_idx][ref_col],
                "row {row_idx} pair {pair:?}"
            );
        }
    }
}

#[test]
fn modulus_choice_does_not_change_the_distribution() {
    let params = Params::new(3, 2, 2, 1).unwrap();
    let canonical = build_code(&make_tower(params).unwrap()).unwrap();
    let alternate = build_code(&FieldTower::with_nth_modulus(params, 1).unwrap()).unwrap();
    let a = wdist_enumerate(&canonical).unwrap();
    let b = wdist_enumerate(&alternate).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, wdist_closed(&params).unwrap());
}

#[test]
fn code_files_round_trip_through_json_on_disk() {
    let t = tower(3, 2, 1, 2);
    let code = build_code(&t).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    std::fs::write(&path, serde_json::to_string_pretty(&code.to_file()).unwrap()).unwrap();
    let parsed: soc_core::code::CodeFile =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let restored = Code::from_file(&parsed).unwrap();
    assert_eq!(restored.rows, code.rows);
    assert_eq!(restored.k, code.k);
    assert_eq!(restored.provenance, code.provenance);
}

#[test]
fn non_canonical_modulus_files_are_rejected() {
    let params = Params::new(3, 2, 2, 1).unwrap();
    let alt = FieldTower::with_nth_modulus(params, 1).unwrap();
    let file = build_code(&alt).unwrap().to_file();
    assert!(matches!(
        Code::from_file(&file),
        Err(Error::Inconsistent { .. })
    ));
}

#[test]
fn foreign_entries_are_rejected() {
    let t = tower(3, 2, 1, 1);
    let bad = vec![vec![0, 1, t.generator()]];
    assert!(matches!(
        Code::from_encodings(t.clone(), 1, bad, Provenance::Synthetic),
        Err(Error::NotInSubfield { .. })
    ));
}
