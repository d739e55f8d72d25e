use blockset_core::gfield::{make_tower, Field};
use blockset_core::linpro::{
    enumerate_hyperplanes, enumerate_points, point_count, rank, rref, subspace_meet, Subspace,
};
use blockset_core::{Elem, FieldTower, Mat};
use proptest::prelude::*;

fn towers() -> Vec<FieldTower> {
    [
        (2, 1, 2),
        (2, 1, 4),
        (2, 2, 3),
        (3, 1, 4),
        (2, 5, 2),
        (5, 1, 2),
        (2, 1, 6),
    ]
    .into_iter()
    .map(|(p, m, h)| make_tower(p, m, h).unwrap())
    .collect()
}

#[test]
fn alpha_matrices_multiply() {
    for t in towers() {
        let f = t.top();
        let mats: Vec<Mat> = f.elements().map(|a| t.alpha_matrix(a)).collect();
        for a in 1..f.size() {
            for b in 1..f.size() {
                let ab = f.mul(a, b);
                assert_eq!(mats[ab as usize], mats[a as usize].mul(t.base(), &mats[b as usize]));
            }
        }
    }
}

#[test]
fn alpha_matrix_acts_on_expansions() {
    for t in towers() {
        let f = t.top();
        for a in 1..f.size() {
            let col = Mat::from_columns(&[t.expand(a)], t.h() as usize);
            for b in 1..f.size().min(40) {
                let prod = t.alpha_matrix(b).mul(t.base(), &col);
                assert_eq!(prod.column(0), t.expand(f.mul(a, b)));
            }
        }
    }
}

#[test]
fn expansion_round_trips() {
    for t in towers() {
        for a in t.top().elements() {
            let e = t.expand(a);
            assert_eq!(e.len(), t.h() as usize);
            assert!(e.iter().all(|&c| c < t.q()));
            assert_eq!(t.compose(&e), a);
        }
    }
}

#[test]
fn towers_are_reproducible() {
    for (p, m, h) in [(2, 1, 3), (3, 2, 2), (2, 3, 2), (7, 1, 2)] {
        let a = make_tower(p, m, h).unwrap();
        let b = make_tower(p, m, h).unwrap();
        assert_eq!(a.base_poly(), b.base_poly());
        assert_eq!(a.top_poly(), b.top_poly());
        assert_eq!(a, b);
    }
}

#[test]
fn point_enumeration_counts() {
    for (q, k) in [(2u32, 2usize), (2, 5), (3, 3), (4, 3), (5, 2), (7, 3), (9, 2)] {
        let f = FieldTower::flat(q).unwrap().base().clone();
        let pts: Vec<_> = enumerate_points(k, &f, u64::MAX).unwrap().collect();
        let want = (q as u128).pow(k as u32).saturating_sub(1) / (q as u128 - 1);
        assert_eq!(pts.len() as u128, want);
        assert_eq!(point_count(k, q), want);
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pts.len());
        for p in &pts {
            let first = p.coords().iter().find(|&&x| x != 0).unwrap();
            assert_eq!(*first, 1);
        }
    }
}

#[test]
fn distinct_hyperplanes_meet_in_codimension_two() {
    for (q, k) in [(2u32, 3usize), (2, 4), (3, 3), (4, 3)] {
        let f = FieldTower::flat(q).unwrap().base().clone();
        let hs: Vec<Subspace> = enumerate_hyperplanes(k, &f, u64::MAX)
            .unwrap()
            .map(|(_, h)| h)
            .collect();
        for i in 0..hs.len() {
            assert_eq!(hs[i].dim(), k - 1);
            for j in i + 1..hs.len() {
                assert_eq!(subspace_meet(&f, &hs[i], &hs[j]).unwrap().dim(), k - 2);
            }
        }
    }
}

/// Largest r with a nonzero r×r minor, determinants by permutation
/// expansion.
fn minor_rank(f: &Field, m: &Mat) -> usize {
    fn det(f: &Field, rows: &[Vec<Elem>]) -> Elem {
        let n = rows.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<Elem>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let term = f.mul(rows[0][j], det(f, &minor));
            total = if j % 2 == 0 {
                f.add(total, term)
            } else {
                f.sub(total, term)
            };
        }
        total
    }
    fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![vec![]];
        }
        if n < r {
            return vec![];
        }
        let mut out = subsets(n - 1, r);
        for mut s in subsets(n - 1, r - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let rows = m.to_rows();
    for r in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), r) {
            for cs in subsets(m.cols(), r) {
                let sub: Vec<Vec<Elem>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                if det(f, &sub) != 0 {
                    return r;
                }
            }
        }
    }
    0
}

fn small_matrix() -> impl Strategy<Value = (u32, Vec<Vec<Elem>>)> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]),
        1usize..=4,
        1usize..=4,
    )
        .prop_flat_map(|(q, r, c)| (Just(q), prop::collection::vec(prop::collection::vec(0..q, c), r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_is_transpose_invariant((q, rows) in small_matrix()) {
        let f = FieldTower::flat(q).unwrap().base().clone();
        let m = Mat::from_rows(&rows, rows[0].len());
        let r = rank(&f, &m);
        prop_assert_eq!(r, rank(&f, &m.transpose()));
        prop_assert_eq!(r, minor_rank(&f, &m));
    }

    #[test]
    fn rref_is_idempotent((q, rows) in small_matrix()) {
        let f = FieldTower::flat(q).unwrap().base().clone();
        let m = Mat::from_rows(&rows, rows[0].len());
        let (once, r1) = rref(&f, &m);
        let (twice, r2) = rref(&f, &once);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(r1, r2);
    }
}
