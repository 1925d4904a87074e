//! Eigenvalue matrices of the line scheme and exact verification on an
//! enumerated space.

use crate::algebra::rational::{self, big, int, Rational};
use crate::error::{Error, Result};
use crate::params::SchemeParams;
use crate::polar::{Eigenspace, PolarSpace, Relation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Default seed for randomized verification.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `P`: rows are eigenspaces, columns relations, both in the order
/// `00, 10, 11, 20, 21`.
pub fn p_matrix(params: &SchemeParams) -> [[i128; 5]; 5] {
    let q = params.q() as i128;
    let qe = |k: i32| params.qe(k);
    [
        [1, q * (q + 1) * (qe(0) + 1), qe(2) * (q + 1), qe(3) * (q + 1) * (qe(0) + 1), params.pow_half(2 * params.twice_e() + 10)],
        [1, qe(1) + q * q + q - 1, q * (qe(1) - 1), q * (qe(2) - qe(1) - qe(0) - q), -qe(3)],
        [1, -(qe(0) + 1), qe(0) * (q * q + 1), -qe(2) * (qe(0) + 1), params.pow_half(2 * params.twice_e() + 4)],
        [1, (q - 1) * (q + 1), -q * (q + 1), -(q - 1) * q * (q + 1), q * q * q],
        [1, -(qe(0) + 1), qe(0) - q, q * (qe(0) + 1), -qe(1)],
    ]
}

/// `q^(k/2)` as a rational; `k` may be negative.
fn qh(params: &SchemeParams, k: i32) -> Rational {
    if k >= 0 {
        big(BigInt::from(params.pow_half(k as u32)))
    } else {
        big(BigInt::from(params.pow_half((-k) as u32))).recip()
    }
}

/// Closed form of `Q = n P^{-1}` (rows relations, columns eigenspaces).
///
/// The entry in row `20`, column `10` is the value forced by `n P^{-1}`;
/// see the tests for the discrepancy with the commonly quoted expression.
pub fn q_closed_form(params: &SchemeParams) -> Vec<Vec<Rational>> {
    let e2 = params.twice_e() as i32;
    let qq = |k: i32| qh(params, e2 + 2 * k);
    let q = int(params.q() as i64);
    let one = Rational::one();
    let theta = &q * &q + &q + &one;
    let eta = qq(1) + &q * &q + &q - &one;
    let nu = qq(2) + &one;
    let qe_q = qq(0) + &q;
    let qe_q2 = qq(0) + &q * &q;
    let qe1 = qq(0) + &one;
    let q1 = &q + &one;
    let a = qq(1) + &one;

    vec![
        vec![
            one.clone(),
            qq(1) * &theta * &a / &qe_q,
            &q * &q * &q1 * &nu / &qe_q,
            qh(params, 2 * e2 + 2) * &theta * &nu / &qe_q2,
            qq(3) * &theta * &nu / &qe_q2,
        ],
        vec![
            one.clone(),
            qq(0) * &theta * &eta * &a / (&q1 * &qe1 * &qe_q),
            -(&q * &nu) / &qe_q,
            (&q - &one) * qh(params, 2 * e2) * &theta * &nu / (&qe1 * &qe_q2),
            -(qq(2) * &theta * &nu) / (&q1 * &qe_q2),
        ],
        vec![
            one.clone(),
            &theta * (qq(1) - &one) * &a / (&q1 * &qe_q),
            (&q * &q + &one) * &nu / &qe_q,
            -(qq(0) * &theta * &nu) / &qe_q2,
            &q * &theta * (qq(0) - &q) * &nu / (&q1 * &qe_q2),
        ],
        vec![
            one.clone(),
            &theta * &a * (qq(2) - qq(1) - qq(0) - &q) / (&q * &q1 * &qe1 * &qe_q),
            -(&q * &nu) / &qe_q,
            -((&q - &one) * qq(-1) * &theta * &nu) / (&qe1 * &qe_q2),
            &q * &theta * &nu / (&q1 * &qe_q2),
        ],
        vec![
            one.clone(),
            -(&theta * &a) / (&q * &qe_q),
            &q1 * &nu / (&q * &qe_q),
            &theta * &nu / (&q * &qe_q2),
            -(&theta * &nu) / (&q * &qe_q2),
        ],
    ]
}

/// `Q = n P^{-1}`, checked entrywise against [`q_closed_form`].
pub fn q_matrix(params: &SchemeParams) -> Result<Vec<Vec<Rational>>> {
    let p: Vec<Vec<Rational>> =
        p_matrix(params).iter().map(|r| r.iter().map(|&x| big(BigInt::from(x))).collect()).collect();
    let inv = rational::invert(&p).ok_or_else(|| Error::Consistency(format!("P is singular at {params}")))?;
    let n = big(BigInt::from(params.n()));
    let q: Vec<Vec<Rational>> = inv.into_iter().map(|r| r.into_iter().map(|x| x * &n).collect()).collect();
    let closed = q_closed_form(params);
    for (i, (a, b)) in q.iter().zip(&closed).enumerate() {
        for (j, (x, y)) in a.iter().zip(b).enumerate() {
            if x != y {
                return Err(Error::Consistency(format!(
                    "Q[{}][{}] at {params}: inversion gives {}, closed form {}",
                    Relation::ALL[i],
                    Eigenspace::ALL[j],
                    rational::to_string(x),
                    rational::to_string(y)
                )));
            }
        }
    }
    Ok(q)
}

/// `P`, `Q` and derived data for one `(q, e)`.
#[derive(Clone, Debug)]
pub struct SchemeTables {
    params: SchemeParams,
    p: [[i128; 5]; 5],
    q: Vec<Vec<Rational>>,
}

impl SchemeTables {
    pub fn new(params: SchemeParams) -> Result<Self> {
        Ok(SchemeTables { params, p: p_matrix(&params), q: q_matrix(&params)? })
    }

    pub fn for_space(space: &PolarSpace) -> Result<Self> {
        Self::new(space.params())
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn n(&self) -> i128 {
        self.params.n()
    }

    pub fn p(&self) -> &[[i128; 5]; 5] {
        &self.p
    }

    /// `P[j][i]`: eigenvalue of relation `i` on eigenspace `j`.
    pub fn eigenvalue(&self, j: Eigenspace, i: Relation) -> i128 {
        self.p[j.index()][i.index()]
    }

    pub fn q(&self) -> &[Vec<Rational>] {
        &self.q
    }

    pub fn valencies(&self) -> [i128; 5] {
        self.p[0]
    }

    /// Eigenspace dimensions `Q[00][j]`.
    pub fn multiplicities(&self) -> Vec<i128> {
        self.q[0].iter().map(|x| x.to_integer().to_i128().expect("integral multiplicity")).collect()
    }

    pub fn p_rational(&self) -> Vec<Vec<Rational>> {
        self.p.iter().map(|r| r.iter().map(|&x| big(BigInt::from(x))).collect()).collect()
    }

    /// `a Q` for an inner distribution `a`.
    pub fn dual(&self, a: &[Rational]) -> Vec<Rational> {
        rational::vec_mat(a, &self.q)
    }

    /// Checks `PQ = QP = nI`, row sums and integrality of multiplicities.
    pub fn check_identities(&self) -> Result<()> {
        let n = big(BigInt::from(self.n()));
        let p = self.p_rational();
        for prod in [rational::mat_mul(&p, &self.q), rational::mat_mul(&self.q, &p)] {
            for (i, row) in prod.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { n.clone() } else { Rational::zero() };
                    if *x != want {
                        return Err(Error::Consistency(format!("PQ != nI at ({i},{j})")));
                    }
                }
            }
        }
        for (j, row) in self.p.iter().enumerate() {
            let s: i128 = row.iter().sum();
            if s != if j == 0 { self.n() } else { 0 } {
                return Err(Error::Consistency(format!("row {j} of P sums to {s}")));
            }
        }
        let m = &self.q[0];
        if m.iter().any(|x| !x.is_integer() || !x.is_positive()) || m.iter().sum::<Rational>() != n {
            return Err(Error::Consistency("multiplicities are not positive integers summing to n".into()));
        }
        Ok(())
    }
}

/// Outcome for one (relation, eigenspace) pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub relation: Relation,
    pub eigenspace: Eigenspace,
    pub passed: bool,
}

/// Result of [`verify_scheme`].
#[derive(Clone, Debug, Serialize)]
pub struct SchemeReport {
    pub space: String,
    pub n: usize,
    pub vectors: usize,
    pub seed: u64,
    pub valencies_match: bool,
    pub pairs: Vec<PairCheck>,
    pub resolution_of_identity: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.valencies_match
            && self.resolution_of_identity
            && self.idempotent
            && self.orthogonal
            && self.pairs.iter().all(|p| p.passed)
    }

    /// Pairs that failed, as `(relation, eigenspace)`.
    pub fn violations(&self) -> Vec<(Relation, Eigenspace)> {
        self.pairs.iter().filter(|p| !p.passed).map(|p| (p.relation, p.eigenspace)).collect()
    }
}

/// Whether every line has the valency row `P[00]`.
pub fn empirical_valencies_match(space: &PolarSpace, tables: &SchemeTables) -> bool {
    let want = tables.valencies();
    (0..space.num_lines()).into_par_iter().all(|l| {
        let got = space.valency_row(l);
        got.iter().zip(&want).all(|(&g, &w)| g as i128 == w)
    })
}

/// `(A_i z)` for all five relations at once.
fn apply_all(space: &PolarSpace, z: &[i128]) -> Result<[Vec<i128>; 5]> {
    let n = space.num_lines();
    let max = z.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    if max.checked_mul(n as u128).is_none_or(|b| b > i128::MAX as u128 / 4) {
        return Err(Error::Consistency("integer overflow risk in scheme verification".into()));
    }
    let rows: Vec<[i128; 5]> = (0..n)
        .into_par_iter()
        .map(|l| {
            let mut acc = [0i128; 5];
            for (m, r) in space.relation_row(l).into_iter().enumerate() {
                acc[r.index()] += z[m];
            }
            acc
        })
        .collect();
    let mut out: [Vec<i128>; 5] = Default::default();
    for (i, o) in out.iter_mut().enumerate() {
        *o = rows.iter().map(|r| r[i]).collect();
    }
    Ok(out)
}

fn combine(coeffs: &[i128; 5], parts: &[Vec<i128>; 5]) -> Result<Vec<i128>> {
    let n = parts[0].len();
    (0..n)
        .map(|k| {
            coeffs.iter().zip(parts).try_fold(0i128, |acc, (&c, v)| {
                c.checked_mul(v[k]).and_then(|t| acc.checked_add(t))
            })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Consistency("integer overflow in scheme verification".into()))
}

/// Randomized exact check that the space realizes `tables`.
///
/// With `D_j` clearing the denominators of column `j` of `Q`, the integer
/// matrix `M_j = sum_i D_j Q[i][j] A_i` equals `n D_j E_j`. For random
/// integer vectors `x` the check confirms `A_i M_j x = P[j][i] M_j x`,
/// `M_j M_k x = [j = k] n D_j M_k x` and `sum_j M_j x / (n D_j) = x`.
pub fn verify_scheme(space: &PolarSpace, tables: &SchemeTables, vectors: usize, seed: u64) -> Result<SchemeReport> {
    if space.params() != tables.params() {
        return Err(Error::Precondition(format!(
            "tables for {} do not match space {}",
            tables.params(),
            space.fingerprint()
        )));
    }
    let n = space.num_lines();
    let n_i = n as i128;
    let denoms: Vec<BigInt> = (0..5)
        .map(|j| tables.q.iter().fold(BigInt::one(), |acc, row| acc.lcm(row[j].denom())))
        .collect();
    let coeffs: Vec<[i128; 5]> = (0..5)
        .map(|j| {
            let mut c = [0i128; 5];
            for (i, ci) in c.iter_mut().enumerate() {
                *ci = (&tables.q[i][j] * big(denoms[j].clone())).to_integer().to_i128().expect("small coefficient");
            }
            c
        })
        .collect();
    let scale: Vec<i128> = denoms.iter().map(|d| d.to_i128().expect("small denominator") * n_i).collect();
    let total = scale.iter().fold(1i128, |acc, &s| acc.lcm(&s));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pair_ok = [[true; 5]; 5];
    let (mut resolution, mut idempotent, mut orthogonal) = (true, true, true);
    for _ in 0..vectors {
        let x: Vec<i128> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let ax = apply_all(space, &x)?;
        let z: Vec<Vec<i128>> = coeffs.iter().map(|c| combine(c, &ax)).collect::<Result<_>>()?;

        // sum_j z_j * (total / scale_j) == total * x
        for k in 0..n {
            let s = (0..5).try_fold(0i128, |acc, j| (total / scale[j]).checked_mul(z[j][k]).and_then(|t| acc.checked_add(t)));
            if s != total.checked_mul(x[k]) {
                resolution = false;
                break;
            }
        }

        for j in 0..5 {
            let az = apply_all(space, &z[j])?;
            for i in 0..5 {
                let ev = tables.p[j][i];
                let ok = az[i].iter().zip(&z[j]).all(|(&a, &b)| ev.checked_mul(b) == Some(a));
                pair_ok[i][j] &= ok;
            }
            for (k, ck) in coeffs.iter().enumerate() {
                let mz = combine(ck, &az)?;
                if k == j {
                    idempotent &= mz.iter().zip(&z[j]).all(|(&a, &b)| scale[j].checked_mul(b) == Some(a));
                } else {
                    orthogonal &= mz.iter().all(|&a| a == 0);
                }
            }
        }
    }

    // A_00 is the identity, leaving 4 x 5 informative pairs
    let pairs = Relation::ALL[1..]
        .iter()
        .flat_map(|&r| Eigenspace::ALL.iter().map(move |&e| (r, e)))
        .map(|(r, e)| PairCheck { relation: r, eigenspace: e, passed: pair_ok[r.index()][e.index()] })
        .collect();
    Ok(SchemeReport {
        space: space.fingerprint(),
        n,
        vectors,
        seed,
        valencies_match: empirical_valencies_match(space, tables),
        pairs,
        resolution_of_identity: resolution,
        idempotent,
        orthogonal,
    })
}

/// `E_00 x` as exact rationals; equals `(sum x / n) j`.
pub fn principal_projection(space: &PolarSpace, tables: &SchemeTables, x: &[i64]) -> Result<Vec<Rational>> {
    let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    let ax = apply_all(space, &xi)?;
    let n = big(BigInt::from(tables.n()));
    Ok((0..space.num_lines())
        .map(|k| {
            (0..5).fold(Rational::zero(), |acc, i| acc + &tables.q[i][0] * big(BigInt::from(ax[i][k])))
                / &n
        })
        .collect())
}

/// Eigenvalue of `A_i` on the image of `E_j`, read back from an explicit
/// projected vector; used to spot-check single entries of `P`.
pub fn observed_eigenvalue(space: &PolarSpace, tables: &SchemeTables, j: Eigenspace, i: Relation, seed: u64) -> Result<Option<Rational>> {
    let n = space.num_lines();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<i128> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
    let d = tables.q.iter().fold(BigInt::one(), |acc, row| acc.lcm(row[j.index()].denom()));
    let mut c = [0i128; 5];
    for (k, ck) in c.iter_mut().enumerate() {
        *ck = (&tables.q[k][j.index()] * big(d.clone())).to_integer().to_i128().expect("small");
    }
    let z = combine(&c, &apply_all(space, &x)?)?;
    let az = apply_all(space, &z)?;
    let Some(k) = z.iter().position(|&v| v != 0) else { return Ok(None) };
    let ratio = Rational::new(BigInt::from(az[i.index()][k]), BigInt::from(z[k]));
    let consistent = az[i.index()].iter().zip(&z).all(|(&a, &b)| big(BigInt::from(a)) == &ratio * big(BigInt::from(b)));
    Ok(consistent.then_some(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::Family;

    fn params(q: u32, e2: u32) -> SchemeParams {
        SchemeParams::new(q, e2).unwrap()
    }

    #[test]
    fn p_rows_at_2_0() {
        let p = p_matrix(&params(2, 0));
        assert_eq!(p[0], [1, 12, 12, 48, 32]);
        assert_eq!(p[3], [1, 3, -6, -6, 8]);
    }

    #[test]
    fn multiplicities_at_small_parameters() {
        let cases: [(u32, u32, [i128; 5]); 6] = [
            (2, 0, [1, 14, 20, 14, 56]),
            (3, 0, [1, 39, 90, 39, 351]),
            (2, 2, [1, 35, 27, 84, 168]),
            (3, 2, [1, 195, 168, 819, 2457]),
            (4, 1, [1, 252, 440, 616, 4928]),
            (2, 4, [1, 84, 34, 476, 476]),
        ];
        for (q, e2, m) in cases {
            let t = SchemeTables::new(params(q, e2)).unwrap();
            assert_eq!(t.multiplicities(), m.to_vec(), "q={q} 2e={e2}");
        }
    }

    #[test]
    fn closed_form_equals_inversion_for_all_legal_parameters() {
        for p in SchemeParams::all_up_to(25) {
            let t = SchemeTables::new(p).unwrap_or_else(|e| panic!("{e}"));
            t.check_identities().unwrap();
            assert!(t.q().iter().all(|r| r[0] == Rational::one()));
        }
    }

    /// The row-20/column-10 entry as usually printed:
    /// `q ϑ η (q^{e+1}+1) / (q (q+1)(q^e+1)(q^e+q))`.
    fn printed_q20_10(p: &SchemeParams) -> Rational {
        let e2 = p.twice_e() as i32;
        let qq = |k: i32| qh(p, e2 + 2 * k);
        let q = int(p.q() as i64);
        let one = Rational::one();
        let theta = &q * &q + &q + &one;
        let eta = qq(1) + &q * &q + &q - &one;
        &q * &theta * &eta * (qq(1) + &one) / (&q * (&q + &one) * (qq(0) + &one) * (qq(0) + &q))
    }

    #[test]
    fn printed_entry_20_10_disagrees_with_inversion() {
        for p in SchemeParams::all_up_to(9) {
            let t = SchemeTables::new(p).unwrap();
            assert_ne!(t.q()[3][1], printed_q20_10(&p), "{p}");
        }
    }

    #[test]
    fn q_times_p_at_3_1() {
        let t = SchemeTables::new(params(3, 2)).unwrap();
        let prod = rational::mat_mul(t.q(), &t.p_rational());
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { int(3640) } else { int(0) });
            }
        }
    }

    #[test]
    fn illegal_parameters() {
        assert!(SchemeParams::new(3, 1).is_err());
    }

    #[test]
    fn o6plus_q2_realizes_the_scheme() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let t = SchemeTables::for_space(&s).unwrap();
        let r = verify_scheme(&s, &t, 5, DEFAULT_SEED).unwrap();
        assert_eq!(r.pairs.len(), 20);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn wrong_tables_are_detected() {
        let s = PolarSpace::build(Family::Sp6, 2).unwrap();
        let wrong = SchemeTables::new(params(2, 0)).unwrap();
        assert!(verify_scheme(&s, &wrong, 1, 1).is_err());
    }

    #[test]
    fn principal_projection_is_the_mean() {
        let s = PolarSpace::build(Family::O6Plus, 2).unwrap();
        let t = SchemeTables::for_space(&s).unwrap();
        let x: Vec<i64> = (0..105).map(|i| (i * 7 % 11) as i64 - 5).collect();
        let mean = Rational::new(BigInt::from(x.iter().sum::<i64>()), BigInt::from(105));
        assert!(principal_projection(&s, &t, &x).unwrap().iter().all(|v| *v == mean));
    }
}
