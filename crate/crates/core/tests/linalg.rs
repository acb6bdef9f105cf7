mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use tlab::linalg::{integer_snf, kernel_generators, residue_snf, smith_normal_form, LinearSolver, ZnMatrix};

fn zn_matrix() -> impl Strategy<Value = ZnMatrix> {
    (prop::sample::select(vec![4u64, 12, 30, 36, 97, 1 << 40]), 1usize..5, 1usize..5).prop_flat_map(|(n, r, c)| {
        prop::collection::vec(0..n, r * c).prop_map(move |e| {
            let rows: Vec<Vec<u64>> = e.chunks(c).map(<[u64]>::to_vec).collect();
            ZnMatrix::from_rows(n, &rows, c)
        })
    })
}

proptest! {
    #[test]
    fn residue_snf_diagonalizes(a in zn_matrix()) {
        let s = residue_snf(&a);
        let n = a.modulus();
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.diagonal_matrix());
        prop_assert_eq!(s.u.mul(&s.u_inv), ZnMatrix::identity(n, a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), ZnMatrix::identity(n, a.cols()));
        for w in s.diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        for &d in &s.diag {
            prop_assert_eq!(n % d, 0);
        }
    }

    #[test]
    fn kernel_generators_are_in_the_kernel(a in zn_matrix()) {
        for g in kernel_generators(&a) {
            prop_assert!(a.mul_vec(&g).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solver_recovers_consistent_systems(a in zn_matrix(), seed in any::<u64>()) {
        let n = a.modulus();
        let x: Vec<u64> = (0..a.cols()).map(|j| seed.wrapping_mul(j as u64 + 7) % n).collect();
        let b = a.mul_vec(&x);
        let sol = LinearSolver::new(&a).solve(&b).expect("consistent system");
        prop_assert_eq!(a.mul_vec(&sol), b);
    }

    #[test]
    fn integer_snf_is_unimodular(entries in prop::collection::vec(-50i64..50, 9)) {
        let a: Vec<Vec<BigInt>> = entries.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&a);
        let uav = integer_snf::mat_mul(&integer_snf::mat_mul(&s.u, &a, 3), &s.v, 3);
        prop_assert_eq!(&uav, &s.d);
        prop_assert_eq!(integer_snf::determinant(&s.u).magnitude().clone(), 1u32.into());
        prop_assert_eq!(integer_snf::determinant(&s.v).magnitude().clone(), 1u32.into());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            }
        }
    }
}

#[test]
fn integer_examples() {
    let m = |rows: &[[i64; 2]]| -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    };
    let d = smith_normal_form(&m(&[[2, 0], [1, 2]])).diagonal();
    assert_eq!(d, vec![BigInt::from(1), BigInt::from(4)]);
    let d = smith_normal_form(&m(&[[6, 4], [4, 6]])).diagonal();
    assert_eq!(d, vec![BigInt::from(2), BigInt::from(10)]);
}
