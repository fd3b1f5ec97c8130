//! Free-algebra homology against the Künneth-quotient oracle on random
//! cell modules, plus determinism and serialization checks.

use dlhom::free::{
    free_algebra_homology, kunneth_quotient_oracle, reduced_free_algebra_homology, CellClass,
    CellModule,
};
use dlhom::Field;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_module(rng: &mut StdRng, p: u32) -> CellModule {
    let n_extra = rng.gen_range(1..=3);
    let mut classes = vec![CellClass {
        name: "x0".into(),
        degree: 0,
    }];
    for i in 0..n_extra {
        classes.push(CellClass {
            name: format!("c{i}"),
            degree: rng.gen_range(1..=6),
        });
    }
    CellModule {
        field: Field::prime(p).unwrap(),
        classes,
        bottom_cell: Some("x0".into()),
    }
}

#[test]
fn reduced_homology_matches_kunneth_oracle() {
    let mut rng = StdRng::seed_from_u64(0xc0ffee);
    for p in [2u32, 3] {
        for case in 0..10 {
            let x = random_module(&mut rng, p);
            let d_max = 16;
            let oracle = kunneth_quotient_oracle(&x, d_max).unwrap();
            let reduced = reduced_free_algebra_homology(&x, d_max)
                .unwrap()
                .hilbert()
                .unwrap();
            assert_eq!(oracle, reduced, "p = {p}, case {case}: {x:?}");
        }
    }
}

#[test]
fn unreduced_homology_is_deterministic() {
    let x = CellModule {
        field: Field::prime(2).unwrap(),
        classes: vec![CellClass {
            name: "s1".into(),
            degree: 1,
        }],
        bottom_cell: None,
    };
    let a = free_algebra_homology(&x, 20).unwrap();
    let b = free_algebra_homology(&x, 20).unwrap();
    assert_eq!(a.hilbert().unwrap(), b.hilbert().unwrap());
    let names_a: Vec<_> = a.gens.iter().map(|g| g.name.clone()).collect();
    let names_b: Vec<_> = b.gens.iter().map(|g| g.name.clone()).collect();
    assert_eq!(names_a, names_b);
}

#[test]
fn rational_case_has_no_operations() {
    let x = CellModule {
        field: Field::Q,
        classes: vec![
            CellClass {
                name: "a".into(),
                degree: 2,
            },
            CellClass {
                name: "b".into(),
                degree: 3,
            },
        ],
        bottom_cell: None,
    };
    let h = free_algebra_homology(&x, 12).unwrap();
    assert_eq!(h.gens.len(), 2);
    assert!(h.gens.iter().all(|g| g.word.is_empty()));
    // Q[a] ⊗ Λ(b): dims 1,0,1,1,1,1,...
    let hs = h.hilbert().unwrap();
    assert_eq!(&hs[..6], &[1, 0, 1, 1, 1, 1]);
}

#[test]
fn cell_module_json_round_trip() {
    let mut rng = StdRng::seed_from_u64(42);
    for p in [2u32, 5] {
        let x = random_module(&mut rng, p);
        let s = serde_json::to_string(&x).unwrap();
        let back: CellModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back.classes.len(), x.classes.len());
        assert_eq!(
            reduced_free_algebra_homology(&x, 10)
                .unwrap()
                .hilbert()
                .unwrap(),
            reduced_free_algebra_homology(&back, 10)
                .unwrap()
                .hilbert()
                .unwrap()
        );
    }
}

#[test]
fn missing_bottom_cell_is_rejected() {
    let x = CellModule {
        field: Field::prime(2).unwrap(),
        classes: vec![CellClass {
            name: "s1".into(),
            degree: 1,
        }],
        bottom_cell: None,
    };
    assert!(reduced_free_algebra_homology(&x, 8).is_err());
}
