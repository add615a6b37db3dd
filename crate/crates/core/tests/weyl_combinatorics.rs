use std::collections::BTreeSet;

use ordinext::root_datum::{builtin, ParabolicData, RootDatum};
use ordinext::weyl::WeylGroup;

const SMALL: &[&str] = &[
    "GL1",
    "GL2",
    "GL3",
    "GL4",
    "SL2",
    "SL3",
    "SL4",
    "PGL2",
    "PGL3",
    "PGL4",
    "Sp4",
    "ExampleCard(2)",
    "ExampleCard(3)",
    "ExampleCard(4)",
    "GL2xSL2",
];

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn orders_and_positive_roots() {
    for (name, order, d) in [
        ("GL2", 2, 1),
        ("GL3", 6, 3),
        ("GL4", 24, 6),
        ("Sp4", 8, 4),
        ("ExampleCard(3)", 8, 3),
    ] {
        let w = WeylGroup::new(&builtin(name).unwrap()).unwrap();
        assert_eq!(w.len(), order, "{name}");
        assert_eq!(w.roots().num_positive(), d, "{name}");
        assert_eq!(w.length(w.longest()), d, "{name}");
    }
}

#[test]
fn longest_element_complements_lengths() {
    for name in ["GL3", "Sp4", "GL4"] {
        let w = WeylGroup::new(&builtin(name).unwrap()).unwrap();
        let w0 = w.longest();
        assert_eq!(w.multiply(w0, w0), w.identity());
        for x in 0..w.len() {
            assert_eq!(
                w.length(w.multiply(w0, x)),
                w.length(w0) - w.length(x),
                "{name}"
            );
            assert_eq!(w.length(x), w.inversion_count(x));
            assert_eq!(w.n_w_dimension(x), w.length(w0) - w.length(x));
        }
    }
}

#[test]
fn words_multiply_back_to_elements() {
    for name in SMALL {
        let w = WeylGroup::new(&builtin(name).unwrap()).unwrap();
        for x in 0..w.len() {
            assert_eq!(w.from_word(w.element(x).word()), Some(x), "{name}");
        }
    }
}

#[test]
fn alpha_w_is_word_independent() {
    let rd = builtin("GL3").unwrap();
    let w = WeylGroup::new(&rd).unwrap();
    // s1 s2 s1 = s2 s1 s2
    let a = w.from_word(&[0, 1, 0]).unwrap();
    let b = w.from_word(&[1, 0, 1]).unwrap();
    assert_eq!(a, b);
    assert_eq!(w.alpha_w(a), vec![2, 0, -2]);
    let sp = WeylGroup::new(&builtin("Sp4").unwrap()).unwrap();
    let x = sp.from_word(&[0, 1, 0, 1]).unwrap();
    let y = sp.from_word(&[1, 0, 1, 0]).unwrap();
    assert_eq!(x, y);
    assert_eq!(x, sp.longest());
    for name in SMALL {
        let rd = builtin(name).unwrap();
        let w = WeylGroup::new(&rd).unwrap();
        assert!(w.alpha_w(w.identity()).iter().all(|&c| c == 0));
        for i in 0..rd.semisimple_rank() {
            assert_eq!(
                w.alpha_w(w.simple_reflection(i).unwrap()),
                rd.simple_root(i).unwrap(),
                "{name}"
            );
        }
    }
}

fn check_partition(rd: &RootDatum) {
    let w = WeylGroup::new(rd).unwrap();
    for levi in subsets(rd.semisimple_rank()) {
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for pd in ParabolicData::all_inner(rd, &levi).unwrap() {
            let ws = w.w_sigma(&pd);
            total += ws.len();
            for x in ws {
                assert!(seen.insert(x), "overlap for levi {levi:?}");
            }
        }
        assert_eq!(total, w.len());
        assert_eq!(seen.len(), w.len());
    }
}

#[test]
fn w_sigma_partitions_w() {
    for name in SMALL {
        check_partition(&builtin(name).unwrap());
    }
}

#[test]
fn steinberg_cosets_and_length_one() {
    for name in SMALL {
        let rd = builtin(name).unwrap();
        let w = WeylGroup::new(&rd).unwrap();
        let n = rd.semisimple_rank();
        for levi in subsets(n) {
            let st = ParabolicData::new(&rd, &levi, &[]).unwrap();
            let ws = w.w_sigma(&st);
            let minimal: Vec<usize> = (0..w.len())
                .filter(|&x| {
                    levi.iter().all(|&g| {
                        let s = w.simple_reflection(g).unwrap();
                        w.length(w.multiply(s, x)) > w.length(x)
                    })
                })
                .collect();
            assert_eq!(ws, minimal, "{name} {levi:?}");
            let ones: Vec<usize> = ws.iter().copied().filter(|&x| w.length(x) == 1).collect();
            let expected: Vec<usize> = (0..n)
                .filter(|a| !levi.contains(a))
                .map(|a| w.simple_reflection(a).unwrap())
                .collect();
            assert_eq!(ones, expected, "{name} {levi:?}");
        }
    }
}

#[test]
fn simple_reflection_in_w_sigma_iff_q_alpha() {
    for name in ["GL3", "GL4", "Sp4"] {
        let rd = builtin(name).unwrap();
        let w = WeylGroup::new(&rd).unwrap();
        let n = rd.semisimple_rank();
        for levi in subsets(n) {
            for pd in ParabolicData::all_inner(&rd, &levi).unwrap() {
                let ws = w.w_sigma(&pd);
                for &a in &levi {
                    let s = w.simple_reflection(a).unwrap();
                    assert_eq!(ws.contains(&s), pd.inner() == [a], "{name} {pd:?}");
                }
                assert_eq!(ws.contains(&w.identity()), pd.inner().is_empty());
                assert_eq!(w.w_bq(&pd).contains(&w.identity()), pd.inner().is_empty());
            }
        }
    }
}

#[test]
fn gl3_examples() {
    let rd = builtin("GL3").unwrap();
    let w = WeylGroup::new(&rd).unwrap();
    assert_eq!(
        w.w_bq(&ParabolicData::new(&rd, &[0, 1], &[0]).unwrap())
            .len(),
        3
    );
    assert_eq!(
        w.w_sigma(&ParabolicData::new(&rd, &[0, 1], &[0, 1]).unwrap()),
        vec![w.longest()]
    );
    assert_eq!(w.w_sigma(&ParabolicData::borel()).len(), 6);
    assert_eq!(w.n_w_dimension(w.simple_reflection(0).unwrap()), 2);
}
