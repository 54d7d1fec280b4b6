use hfree::cartan::{affine_catalog, Gcm};
use hfree::classify::decide::double_edge_cycles;
use hfree::classify::{decide, DecideOptions, Verdict};
use hfree::exec::Exec;

fn opts() -> DecideOptions {
    DecideOptions { certify: false, exec: Exec::best() }
}

#[test]
fn affine_catalog_is_empty() {
    for n in 2..=6 {
        for (label, g) in affine_catalog(n) {
            let d = decide(&g, opts()).unwrap();
            assert_eq!(d.verdict, Verdict::Empty, "{label}");
            assert_eq!(d.evidence[0].rule, "affine-emptiness", "{label}");
        }
    }
}

#[test]
fn double_edge_cycles_are_empty_and_obstructed() {
    for (c, (g, ..)) in double_edge_cycles().into_iter().enumerate() {
        let d = decide(&g, opts()).unwrap();
        assert_eq!(d.verdict, Verdict::Empty, "case {}", c + 1);
        let e = &d.evidence[0];
        if e.rule == "three-cycle-double-edge" {
            assert_eq!(e.data["obstructed"], true, "case {}", c + 1);
        }
    }
}

#[test]
fn evidence_for_larger_matrices() {
    // a simply-laced square contains the 4-cycle, affine A_3
    let sq = Gcm::new(vec![vec![2, -1, 0, -1], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![-1, 0, -1, 2]]).unwrap();
    assert_eq!(decide(&sq, opts()).unwrap().evidence[0].rule, "affine-emptiness");
    // a 4-cycle with a pendant vertex: the cycle is a proper sub-diagram
    let mut a = vec![vec![0i64; 5]; 5];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)] {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    let d = decide(&Gcm::new(a).unwrap(), opts()).unwrap();
    assert_eq!(d.verdict, Verdict::Empty);
    assert!(["d4-subdiagram", "affine-subdiagram"].contains(&d.evidence[0].rule), "{}", d.evidence[0].rule);
    // E_6 contains D_4
    let e6 = hfree::cartan::finite_matrix('E', 6).unwrap();
    assert_eq!(decide(&e6, opts()).unwrap().evidence[0].rule, "d4-subdiagram");
}

#[test]
fn nonempty_constructors_use_input_numbering() {
    // C_3 with vertices reversed
    let g = Gcm::new(vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]]).unwrap();
    let d = decide(&g, opts()).unwrap();
    assert_eq!(d.verdict, Verdict::Nonempty);
    assert_eq!(d.module.unwrap().gcm, g);
}
