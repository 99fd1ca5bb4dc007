//! 3×3 rational matrix helpers.

use num_traits::Zero;

use crate::exact_arith::BigRat;

pub(crate) type Mat3 = [[BigRat; 3]; 3];

pub(crate) fn det3(m: &Mat3) -> BigRat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub(crate) fn inv3(m: &Mat3) -> Option<Mat3> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // cyclic cofactors carry their sign already; the inverse is adj / det
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| c(j, i) / &d)
    }))
}

pub(crate) fn transpose(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub(crate) fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(BigRat::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn inverse_times_matrix_is_identity() {
        let r = |x: i64| BigRat::from_integer(BigInt::from(x));
        let m: Mat3 = [[r(2), r(1), r(0)], [r(-1), r(3), r(5)], [r(4), r(0), r(1)]];
        let p = matmul(&m, &inv3(&m).unwrap());
        for (i, row) in p.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(
                    x,
                    &if i == j {
                        BigRat::one()
                    } else {
                        BigRat::zero()
                    }
                );
            }
        }
        assert_eq!(det3(&transpose(&m)), det3(&m));
    }
}
