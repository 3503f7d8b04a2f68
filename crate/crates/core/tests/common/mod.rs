//! Strategies, independent oracles and property bodies shared by the
//! property suite and the acceptance suite.
#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use stabsplit::distance::{dressed_distance, DistanceMode, DistanceQuery};
use stabsplit::gf2::{binomial, enumerate_weight_w, BitMatrix, BitVector};
use stabsplit::pauli::{
    commutes, symplectic_gram, symplectic_product, PauliOperator, SymplecticForm,
};
use stabsplit::repcount::PairTable;
use stabsplit::ring::{RingElement, RingMatrix};
use stabsplit::split::{
    commutant, find_x_candidates, split_generators, PauliKind, SplitConfig, SplitMode,
};
use stabsplit::tableau::{
    build_css_tableau, center_of, compute_group_params, multiply_stabilizer_rows, verify_subsystem,
    verify_symplectic, CssCode, Tableau,
};

pub const CASES: u32 = 1000;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        ..ProptestConfig::default()
    }
}

/// Runs `body` on `CASES` inputs drawn from `strategy`.
pub fn run_property<S: Strategy>(
    strategy: S,
    body: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(CASES)
    };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, body).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- oracles

/// Rank over GF(2) of rows packed into `u64`s (XOR basis).
pub fn rank_u64(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

pub fn pack(v: &BitVector) -> u64 {
    v.iter_ones().map(|i| 1u64 << i).sum()
}

fn sym_u64(a: u64, b: u64, n: usize) -> bool {
    let mask = (1u64 << n) - 1;
    (((a & mask) & (b >> n)) ^ ((a >> n) & (b & mask))).count_ones() % 2 == 1
}

/// Minimum weight of a Pauli commuting with `checks` and outside
/// `span(group)`, by scanning all `4^n` Paulis.
pub fn naive_distance(n: usize, checks: &[u64], group: &[u64]) -> Option<usize> {
    let rank = rank_u64(group);
    let mut best: Option<usize> = None;
    for p in 1u64..(1u64 << (2 * n)) {
        let w = ((p & ((1 << n) - 1)) | (p >> n)).count_ones() as usize;
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if checks.iter().any(|&c| sym_u64(p, c, n)) {
            continue;
        }
        let mut with = group.to_vec();
        with.push(p);
        if rank_u64(&with) > rank {
            best = Some(w);
        }
    }
    best
}

/// Gaussian-integer 2^n x 2^n matrices for explicit Pauli products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMat {
    pub dim: usize,
    pub re: Vec<i64>,
    pub im: Vec<i64>,
}

impl CMat {
    fn single(letter: char) -> Self {
        let (re, im) = match letter {
            'I' => (vec![1, 0, 0, 1], vec![0; 4]),
            'X' => (vec![0, 1, 1, 0], vec![0; 4]),
            'Y' => (vec![0; 4], vec![0, -1, 1, 0]),
            'Z' => (vec![1, 0, 0, -1], vec![0; 4]),
            _ => unreachable!(),
        };
        Self { dim: 2, re, im }
    }

    fn kron(&self, o: &Self) -> Self {
        let d = self.dim * o.dim;
        let mut re = vec![0; d * d];
        let mut im = vec![0; d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (ar, ai) = (self.re[i * self.dim + j], self.im[i * self.dim + j]);
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        let (br, bi) = (o.re[k * o.dim + l], o.im[k * o.dim + l]);
                        let idx = (i * o.dim + k) * d + j * o.dim + l;
                        re[idx] = ar * br - ai * bi;
                        im[idx] = ar * bi + ai * br;
                    }
                }
            }
        }
        Self { dim: d, re, im }
    }

    fn mul(&self, o: &Self) -> Self {
        let d = self.dim;
        let mut re = vec![0; d * d];
        let mut im = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let (mut sr, mut si) = (0, 0);
                for k in 0..d {
                    let (ar, ai) = (self.re[i * d + k], self.im[i * d + k]);
                    let (br, bi) = (o.re[k * d + j], o.im[k * d + j]);
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
                re[i * d + j] = sr;
                im[i * d + j] = si;
            }
        }
        Self { dim: d, re, im }
    }

    pub fn pauli(letters: &str) -> Self {
        let mut chars = letters.chars();
        let mut m = Self::single(chars.next().expect("at least one qubit"));
        for c in chars {
            m = m.kron(&Self::single(c));
        }
        m
    }
}

/// All Pauli strings on `n` qubits, as letters.
pub fn all_pauli_letters(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| "IXYZ".chars().map(move |c| format!("{s}{c}")))
            .collect();
    }
    out
}

fn letters_to_operator(s: &str) -> PauliOperator {
    let n = s.len();
    let mut x = BitVector::zeros(n);
    let mut z = BitVector::zeros(n);
    for (i, c) in s.chars().enumerate() {
        x.set(i, c == 'X' || c == 'Y');
        z.set(i, c == 'Z' || c == 'Y');
    }
    PauliOperator::new(x, z).unwrap()
}

/// `commutes` against explicit matrix products, over all pairs on `n`
/// qubits. Returns the number of pairs checked.
pub fn commutation_matches_matrices(n: usize) -> Result<usize, String> {
    let letters = all_pauli_letters(n);
    let mats: Vec<CMat> = letters.iter().map(|s| CMat::pauli(s)).collect();
    let ops: Vec<PauliOperator> = letters.iter().map(|s| letters_to_operator(s)).collect();
    let mut checked = 0;
    for i in 0..ops.len() {
        for j in 0..ops.len() {
            let explicit = mats[i].mul(&mats[j]) == mats[j].mul(&mats[i]);
            if commutes(&ops[i], &ops[j]).unwrap() != explicit {
                return Err(format!("{} and {} disagree", letters[i], letters[j]));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

// ------------------------------------------------------------- strategies

pub fn arb_bitvector(len: usize) -> impl Strategy<Value = BitVector> {
    vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

pub fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        vec(arb_bitvector(c), r).prop_map(move |rows| BitMatrix::from_rows(c, rows))
    })
}

/// Random CSS code on 2..=8 qubits: random X checks, Z checks drawn from
/// the kernel of the X checks.
pub fn arb_css() -> impl Strategy<Value = CssCode> {
    (2usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                vec(arb_bitvector(n), 0..=n / 2 + 1),
                vec(vec(any::<bool>(), n), 0..=n / 2 + 1),
            )
        })
        .prop_map(|(n, hx_rows, coeffs)| {
            let hx = BitMatrix::from_rows(n, hx_rows);
            let ker = hx.kernel();
            let hz_rows = coeffs
                .iter()
                .map(|c| {
                    let mut v = BitVector::zeros(n);
                    for (i, row) in ker.rows().iter().enumerate() {
                        if c[i] {
                            v.xor_in(row);
                        }
                    }
                    v
                })
                .collect();
            CssCode::new(hx, BitMatrix::from_rows(n, hz_rows)).expect("orthogonal by construction")
        })
}

/// A CSS code with picks used to drive preprocessing and splitting.
pub fn arb_css_with_picks() -> impl Strategy<Value = (CssCode, Vec<usize>, usize)> {
    (arb_css(), vec(any::<usize>(), 4), 1usize..8)
}

fn ring_matrix_strategy(rows: usize, cols: usize, l: usize) -> impl Strategy<Value = RingMatrix> {
    vec(vec(any::<bool>(), l), rows * cols).prop_map(move |cs| {
        let entries = cs
            .iter()
            .map(|c| RingElement::from_coeffs(BitVector::from_bools(c)))
            .collect();
        RingMatrix::from_entries(rows, cols, l, entries).unwrap()
    })
}

/// `(A, B, C)` with `A, B` of one shape and `C` conforming to `A C`.
pub fn arb_ring_triple() -> impl Strategy<Value = (RingMatrix, RingMatrix, RingMatrix)> {
    (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=5).prop_flat_map(|(r, c, d, l)| {
        (
            ring_matrix_strategy(r, c, l),
            ring_matrix_strategy(r, c, l),
            ring_matrix_strategy(c, d, l),
        )
    })
}

/// Random gauge generators on 1..=6 qubits.
pub fn arb_gauge() -> impl Strategy<Value = (usize, BitMatrix)> {
    (1usize..=6).prop_flat_map(|n| {
        (Just(n), vec(arb_bitvector(2 * n), 0..=2 * n))
            .prop_map(|(n, rows)| (n, BitMatrix::from_rows(2 * n, rows)))
    })
}

/// A random symplectic matrix on `2r` coordinates, as a product of
/// transvections `v -> v + <v, h> h`.
pub fn arb_symplectic(r: usize) -> impl Strategy<Value = BitMatrix> {
    vec(arb_bitvector(2 * r), 0..8).prop_map(move |hs| {
        let form = SymplecticForm::new(r);
        let mut m = BitMatrix::identity(2 * r);
        for h in hs {
            for i in 0..2 * r {
                if form.product(m.row(i), &h).unwrap() {
                    m.row_mut(i).xor_in(&h);
                }
            }
        }
        m
    })
}

// ------------------------------------------------------------- properties

pub fn prop_build_preprocess_split(
    (code, picks, w): (CssCode, Vec<usize>, usize),
) -> Result<(), TestCaseError> {
    let t = build_css_tableau(&code).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(verify_symplectic(&t), "build");
    check_logicals(&t)?;
    let stabs: Vec<usize> = t.stabilizer_region().collect();
    let mut t2 = t.clone();
    if stabs.len() >= 2 {
        let target = stabs[picks[0] % stabs.len()];
        let sources: Vec<usize> = stabs
            .iter()
            .copied()
            .filter(|&s| s != target && picks[1] >> (s % 32) & 1 == 1)
            .collect();
        if !sources.is_empty() {
            t2 = multiply_stabilizer_rows(&t, target, &sources)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(verify_symplectic(&t2), "preprocess");
        }
    }
    let n = t2.n();
    if stabs.is_empty() || w >= n {
        return Ok(());
    }
    let r = 1 + picks[2] % stabs.len().min(2);
    let mut replace: Vec<usize> = (0..r)
        .map(|j| stabs[(picks[3] + j) % stabs.len()])
        .collect();
    replace.sort_unstable();
    replace.dedup();
    match split_generators(&t2, &SplitConfig::new(w, replace.clone())) {
        Ok(out) => {
            prop_assert!(verify_symplectic(&out.tableau), "split symplectic");
            prop_assert!(verify_subsystem(&out.tableau), "split subsystem");
            let p = out.params;
            prop_assert_eq!(p.r, replace.len());
            prop_assert_eq!(p.s, stabs.len() - replace.len());
            prop_assert_eq!(p.k, n - p.s - p.r);
            // Z/X pairing of the new gauges is the identity permutation.
            let gx = BitMatrix::from_rows(2 * n, out.gauges.g_x.clone());
            let gz = BitMatrix::from_rows(2 * n, out.gauges.g_z.clone());
            prop_assert_eq!(
                symplectic_gram(&gx, &gz),
                BitMatrix::identity(replace.len())
            );
        }
        Err(stabsplit::Error::SplitFailed { .. })
        | Err(stabsplit::Error::ResourceBudget { .. }) => {}
        Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
    }
    Ok(())
}

fn check_logicals(t: &Tableau) -> Result<(), TestCaseError> {
    let n = t.n();
    let u = t.rows();
    let gram = symplectic_gram(u, u);
    for i in 0..2 * n {
        for j in 0..2 * n {
            let expect = (i + n == j) || (j + n == i);
            prop_assert_eq!(gram.get(i, j), expect, "rows {} and {}", i, j);
        }
    }
    Ok(())
}

pub fn prop_center_commutes((n, g): (usize, BitMatrix)) -> Result<(), TestCaseError> {
    let c = center_of(&g, n);
    prop_assert!(symplectic_gram(&c, &g).is_zero());
    for row in c.rows() {
        prop_assert!(g.in_row_space(row));
    }
    let p = compute_group_params(&g, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(p.k + p.r + p.s, n);
    prop_assert_eq!(p.s, c.rank());
    Ok(())
}

pub fn prop_lift_homomorphism(
    (a, b, c): (RingMatrix, RingMatrix, RingMatrix),
) -> Result<(), TestCaseError> {
    let sum = a.add(&b).unwrap();
    let mut xor = a.lift();
    for i in 0..xor.nrows() {
        xor.row_mut(i).xor_in(b.lift().row(i));
    }
    prop_assert_eq!(sum.lift(), xor);
    prop_assert_eq!(a.matmul(&c).unwrap().lift(), a.lift().mul(&c.lift()));
    prop_assert_eq!(a.conjugate_transpose().lift(), a.lift().transpose());
    prop_assert_eq!(a.conjugate_transpose().conjugate_transpose(), a);
    Ok(())
}

pub fn prop_kernel_rank(m: BitMatrix) -> Result<(), TestCaseError> {
    let k = m.kernel();
    let cols = m.ncols();
    prop_assert!(m.mul_transpose(&k).is_zero() || k.nrows() == 0 || m.nrows() == 0);
    prop_assert_eq!(k.rank(), k.nrows());
    prop_assert_eq!(k.rank() + m.rank(), cols);
    prop_assert_eq!(m.rank(), m.transpose().rank());
    let (r, _) = m.rref();
    prop_assert_eq!(r.rank(), m.rank());
    prop_assert_eq!(r.rref().0, r);
    let packed: Vec<u64> = m.rows().iter().map(pack).collect();
    prop_assert_eq!(m.rank(), rank_u64(&packed));
    Ok(())
}

pub fn prop_row_space((m, v): (BitMatrix, BitVector)) -> Result<(), TestCaseError> {
    let mut with = m.clone();
    with.push_row(v.clone());
    prop_assert_eq!(m.in_row_space(&v), with.rank() == m.rank());
    Ok(())
}

pub fn arb_matrix_and_vector() -> impl Strategy<Value = (BitMatrix, BitVector)> {
    (0usize..=6, 1usize..=8).prop_flat_map(|(r, c)| {
        (
            vec(arb_bitvector(c), r).prop_map(move |rows| BitMatrix::from_rows(c, rows)),
            arb_bitvector(c),
        )
    })
}

pub fn prop_kron_mixed_product(
    (a, b, c, d): (BitMatrix, BitMatrix, BitMatrix, BitMatrix),
) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    Ok(())
}

pub fn arb_kron_quad() -> impl Strategy<Value = (BitMatrix, BitMatrix, BitMatrix, BitMatrix)> {
    (
        1usize..=3,
        1usize..=3,
        1usize..=3,
        1usize..=3,
        1usize..=3,
        1usize..=3,
    )
        .prop_flat_map(|(p, q, r, s, t, u)| {
            let m = |rows: usize, cols: usize| {
                vec(arb_bitvector(cols), rows).prop_map(move |v| BitMatrix::from_rows(cols, v))
            };
            (m(p, q), m(r, s), m(q, t), m(s, u))
        })
}

pub fn prop_enumerate_weight((n, w): (usize, usize)) -> Result<(), TestCaseError> {
    let all: Vec<BitVector> = enumerate_weight_w(n, w).collect();
    prop_assert_eq!(all.len() as u128, binomial(n, w));
    let mut keys: Vec<u64> = all.iter().map(pack).collect();
    keys.sort_unstable();
    keys.dedup();
    prop_assert_eq!(keys.len(), all.len());
    prop_assert!(all.iter().all(|v| v.weight() == w));
    Ok(())
}

pub fn prop_symplectic_form(
    (u, v, x): (BitVector, BitVector, BitVector),
) -> Result<(), TestCaseError> {
    let n = u.len() / 2;
    let omega = SymplecticForm::new(n).matrix();
    let um = BitMatrix::from_rows(2 * n, vec![u.clone()]);
    let vm = BitMatrix::from_rows(2 * n, vec![v.clone()]);
    let matrix_form = um.mul(&omega).mul_transpose(&vm).get(0, 0);
    prop_assert_eq!(symplectic_product(&u, &v).unwrap(), matrix_form);
    prop_assert!(!symplectic_product(&u, &u).unwrap());
    let uv = &u ^ &v;
    prop_assert_eq!(
        symplectic_product(&uv, &x).unwrap(),
        symplectic_product(&u, &x).unwrap() ^ symplectic_product(&v, &x).unwrap()
    );
    let (p, q) = (
        PauliOperator::from_symplectic(&u),
        PauliOperator::from_symplectic(&v),
    );
    prop_assert!(PauliOperator::from_symplectic(&uv).weight() <= p.weight() + q.weight());
    Ok(())
}

pub fn arb_vector_triple() -> impl Strategy<Value = (BitVector, BitVector, BitVector)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            arb_bitvector(2 * n),
            arb_bitvector(2 * n),
            arb_bitvector(2 * n),
        )
    })
}

/// Distance against the `4^n` scan, CSS shortcut against the full scan,
/// dressed against bare, and monotonicity in the limit.
pub fn prop_distance_oracle(
    (code, picks, _w): (CssCode, Vec<usize>, usize),
) -> Result<(), TestCaseError> {
    let n = code.n();
    if n > 6 {
        return Ok(());
    }
    let t = build_css_tableau(&code).map_err(|e| TestCaseError::fail(e.to_string()))?;
    // Optionally turn one stabilizer into a gauge pair to exercise the
    // subsystem case.
    let stabs: Vec<usize> = t.stabilizer_region().collect();
    let t = if !stabs.is_empty() && picks[0] % 2 == 1 {
        match split_generators(
            &t,
            &SplitConfig::new(1, vec![stabs[picks[1] % stabs.len()]]),
        ) {
            Ok(out) => out.tableau,
            Err(_) => t,
        }
    } else {
        t
    };
    let stab = t.stabilizers();
    let gauge = t.gauge_group();
    let checks: Vec<u64> = stab.rows().iter().map(pack).collect();
    let group: Vec<u64> = stab.rows().iter().chain(gauge.rows()).map(pack).collect();
    let expected = naive_distance(n, &checks, &group);

    let q = DistanceQuery::new(stab.clone(), gauge.clone(), n).with_force(true);
    let fast = dressed_distance(&q).unwrap();
    let full = dressed_distance(&q.clone().with_css_shortcut(false)).unwrap();
    prop_assert_eq!(fast.distance, expected);
    prop_assert_eq!(full.distance, expected);
    if let Some(wit) = &fast.witness {
        let p = pack(wit);
        prop_assert!(checks.iter().all(|&c| !sym_u64(p, c, n)));
        let mut with = group.clone();
        with.push(p);
        prop_assert!(rank_u64(&with) > rank_u64(&group));
    }
    let bare = dressed_distance(&q.clone().with_mode(DistanceMode::Bare)).unwrap();
    if let (Some(d), Some(b)) = (fast.distance, bare.distance) {
        prop_assert!(d <= b);
    }
    if let Some(d) = fast.distance {
        for limit in d..=n {
            let again = dressed_distance(
                &DistanceQuery::new(stab.clone(), gauge.clone(), limit).with_force(true),
            )
            .unwrap();
            prop_assert_eq!(again.distance, Some(d));
        }
        if d > 1 {
            let below =
                dressed_distance(&DistanceQuery::new(stab, gauge, d - 1).with_force(true)).unwrap();
            prop_assert_eq!(below.distance, None);
        }
    }
    Ok(())
}

/// Every X candidate commutes with the commutant and the search is
/// deterministic and strategy independent.
pub fn prop_candidates(
    (code, picks, w): (CssCode, Vec<usize>, usize),
) -> Result<(), TestCaseError> {
    let t = build_css_tableau(&code).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let n = t.n();
    let stabs: Vec<usize> = t.stabilizer_region().collect();
    if stabs.is_empty() || w >= n {
        return Ok(());
    }
    let cfg = SplitConfig::new(w, vec![stabs[picks[0] % stabs.len()]]);
    let com = commutant(&t, &cfg);
    for mode in [SplitMode::Generators, SplitMode::Operators] {
        let pool = find_x_candidates(&com, w, &cfg, mode);
        for c in &pool {
            prop_assert_eq!(PauliKind::of(&c.vector), Some(PauliKind::X));
            prop_assert_eq!(c.support.len(), w);
            let m = BitMatrix::from_rows(2 * n, vec![c.vector.clone()]);
            prop_assert!(symplectic_gram(&m, &com.rows).is_zero());
        }
        let again = find_x_candidates(&com, w, &cfg, mode);
        prop_assert_eq!(&pool, &again);
        let par = find_x_candidates(
            &com,
            w,
            &cfg.clone()
                .with_execution(stabsplit::par::Execution::Parallel),
            mode,
        );
        prop_assert_eq!(&pool, &par);
    }
    Ok(())
}

pub fn prop_pair_table_invariant(m: BitMatrix) -> Result<(), TestCaseError> {
    let p = PairTable::new(2).unwrap();
    prop_assert_eq!(p.relabeled(&m), p);
    Ok(())
}
