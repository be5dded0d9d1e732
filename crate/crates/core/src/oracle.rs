//! Small independent oracles used to cross-check the main engines: counting
//! sequences by their recurrences, and the homology of cyclic groups from the
//! two-periodic free resolution. Nothing here touches the bar-complex code.

use crate::scalar::RingSpec;

/// Catalan numbers C_0, C_1, ... by the convolution recurrence.
pub fn catalan(n: usize) -> u128 {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for m in 1..=n {
        for i in 0..m {
            c[m] += c[i] * c[m - 1 - i];
        }
    }
    c[n]
}

/// Motzkin numbers M_0, M_1, ... by M_{m+1} = M_m + sum M_i M_{m-1-i}.
pub fn motzkin(n: usize) -> u128 {
    let mut m = vec![0u128; n + 1];
    m[0] = 1;
    for k in 1..=n {
        m[k] = m[k - 1];
        for i in 0..k - 1 {
            m[k] += m[i] * m[k - 2 - i];
        }
    }
    m[n]
}

/// (2n-1)!! , the number of perfect matchings on 2n points.
pub fn double_factorial_odd(n: usize) -> u128 {
    (0..n).map(|k| (2 * k + 1) as u128).product()
}

/// Involution counts I(m) (partial matchings on m points) by
/// I(m) = I(m-1) + (m-1) I(m-2).
pub fn involutions(m: usize) -> u128 {
    let mut i = vec![0u128; m.max(2) + 1];
    i[0] = 1;
    i[1] = 1;
    for k in 2..=m.max(2) {
        i[k] = i[k - 1] + (k as u128 - 1) * i[k - 2];
    }
    i[m]
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The number of partial injections on n points: sum_k C(n,k)^2 k!.
pub fn rook_count(n: usize) -> u128 {
    let mut fact = 1u128;
    let mut total = 0u128;
    for k in 0..=n {
        if k > 0 {
            fact *= k as u128;
        }
        total += binomial(n, k) * binomial(n, k) * fact;
    }
    total
}

/// Homology dimensions of the cyclic group of order m with coefficients in a
/// field, from the two-periodic resolution ... -> k[C_m] -(t-1)-> k[C_m]
/// -(norm)-> k[C_m] -> k: after tensoring down, the differentials alternate
/// between 0 and multiplication by m.
pub fn cyclic_group_homology_dims(m: u64, ring: RingSpec, qmax: usize) -> Vec<usize> {
    let m_is_zero = match ring {
        RingSpec::Rationals | RingSpec::Integers => m == 0,
        RingSpec::PrimeField { p } | RingSpec::QuadExt { p } => m % p == 0,
    };
    (0..=qmax)
        .map(|q| {
            if q == 0 || m_is_zero {
                1
            } else {
                0
            }
        })
        .collect()
}

/// Homology dimensions of the trivial group over any field.
pub fn trivial_group_homology_dims(qmax: usize) -> Vec<usize> {
    (0..=qmax).map(|q| usize::from(q == 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_values() {
        assert_eq!(
            (1..=5).map(catalan).collect::<Vec<_>>(),
            vec![1, 2, 5, 14, 42]
        );
        assert_eq!(
            [2, 4, 6, 8].map(motzkin).to_vec(),
            vec![2, 9, 51, 323]
        );
        assert_eq!(
            (1..=4).map(double_factorial_odd).collect::<Vec<_>>(),
            vec![1, 3, 15, 105]
        );
        assert_eq!(
            [2, 4, 6, 8].map(involutions).to_vec(),
            vec![2, 10, 76, 764]
        );
        assert_eq!((1..=3).map(rook_count).collect::<Vec<_>>(), vec![2, 7, 34]);
    }

    #[test]
    fn cyclic_homology_oracle() {
        let f2 = RingSpec::prime_field(2).unwrap();
        assert_eq!(cyclic_group_homology_dims(2, f2, 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(
            cyclic_group_homology_dims(2, RingSpec::Rationals, 3),
            vec![1, 0, 0, 0]
        );
        let f3 = RingSpec::prime_field(3).unwrap();
        assert_eq!(cyclic_group_homology_dims(2, f3, 2), vec![1, 0, 0]);
    }
}
