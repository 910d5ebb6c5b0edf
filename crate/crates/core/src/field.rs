//! Arithmetic in GF(2^m), m odd, and 4×4 matrices over it.
//!
//! Elements are bit masks of polynomials over GF(2) reduced modulo a fixed
//! irreducible. Matrices may carry several diagonal 4×4 blocks; a
//! multi-block matrix is an element of a direct power of the matrix group.

#![allow(clippy::needless_range_loop)]

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field exponent m={0} must be odd and in 1..=31")]
    BadExponent(u32),
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {m}")]
    Reducible { m: u32, modulus: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("field mismatch: GF(2^{0}) vs GF(2^{1})")]
    SpecMismatch(u32, u32),
    #[error("singular matrix")]
    Singular,
    #[error("element order exceeds bound {0}")]
    OrderBound(u64),
    #[error("matrix notation: {0}")]
    Notation(String),
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division by every polynomial of degree ≤ m/2.
pub fn is_irreducible(modulus: u64) -> bool {
    let m = poly_degree(modulus);
    if m < 1 {
        return false;
    }
    for d in 1..=(m / 2) {
        for low in 0u64..(1 << d) {
            let divisor = (1u64 << d) | low;
            if poly_rem(modulus, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    m: u32,
    modulus: u32,
}

impl FieldSpec {
    pub fn new(m: u32, modulus: u32) -> Result<FieldSpec, FieldError> {
        if m.is_multiple_of(2) || m == 0 || m > 31 {
            return Err(FieldError::BadExponent(m));
        }
        if poly_degree(modulus as u64) != m as i32 || !is_irreducible(modulus as u64) {
            return Err(FieldError::Reducible { m, modulus });
        }
        Ok(FieldSpec { m, modulus })
    }

    /// x³+x+1, x⁵+x²+1, x⁷+x+1, else the least irreducible mask of degree m.
    pub fn default_for(m: u32) -> Result<FieldSpec, FieldError> {
        let modulus = match m {
            3 => 0b1011,
            5 => 0b100101,
            7 => 0b1000_0011,
            _ => {
                if m.is_multiple_of(2) || m == 0 || m > 31 {
                    return Err(FieldError::BadExponent(m));
                }
                (1u64 << m..1u64 << (m + 1))
                    .find(|&p| is_irreducible(p))
                    .expect("irreducible polynomials exist in every degree") as u32
            }
        };
        FieldSpec::new(m, modulus)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    /// n with q = 2^{2n+1}.
    pub fn suzuki_n(&self) -> u32 {
        (self.m - 1) / 2
    }

    /// √(2q) = 2^{n+1}.
    pub fn sqrt_2q(&self) -> u64 {
        1u64 << (self.suzuki_n() + 1)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 1 }
    }

    pub fn element(&self, bits: u32) -> FieldElement {
        assert!((bits as u64) < self.size(), "bit mask {bits:#x} out of range");
        FieldElement { spec: *self, bits }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size() as u32).map(move |b| self.element(b))
    }

    pub(crate) fn mul_bits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0u32;
        let top = 1u32 << self.m;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub(crate) fn pow_bits(&self, a: u32, e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_bits(result, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        result
    }

    pub(crate) fn inv_bits(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow_bits(a, self.size() - 2))
        }
    }

    /// Membership in the subfield GF(2^d): a^{2^d} = a.
    pub fn in_subfield(&self, a: u32, d: u32) -> bool {
        let mut x = a;
        for _ in 0..d {
            x = self.mul_bits(x, x);
        }
        x == a
    }

    /// True if `a` lies in some proper subfield GF(2^d), d | m, d < m.
    pub fn in_proper_subfield(&self, a: u32) -> bool {
        (1..self.m).filter(|d| self.m.is_multiple_of(*d)).any(|d| self.in_subfield(a, d))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.m, self.modulus)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u32,
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch(self.spec.m, other.spec.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(FieldElement { spec: self.spec, bits: self.bits ^ other.bits })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(FieldElement { spec: self.spec, bits: self.spec.mul_bits(self.bits, other.bits) })
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let bits = self.spec.inv_bits(self.bits).ok_or(FieldError::ZeroInverse)?;
        Ok(FieldElement { spec: self.spec, bits })
    }

    /// Negative exponents go through the inverse; 0^k for k<0 is an error.
    pub fn pow(&self, k: i64) -> Result<FieldElement, FieldError> {
        if self.bits == 0 {
            return match k.cmp(&0) {
                std::cmp::Ordering::Less => Err(FieldError::ZeroInverse),
                std::cmp::Ordering::Equal => Ok(self.spec.one()),
                std::cmp::Ordering::Greater => Ok(*self),
            };
        }
        let e = k.rem_euclid((self.spec.size() - 1) as i64) as u64;
        Ok(FieldElement { spec: self.spec, bits: self.spec.pow_bits(self.bits, e) })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.bits == 0 {
            return None;
        }
        let n = self.spec.size() - 1;
        let mut best = n;
        for d in divisors(n) {
            if self.spec.pow_bits(self.bits, d) == 1 {
                best = d;
                break;
            }
        }
        Some(best)
    }

    pub fn is_generator(&self) -> bool {
        self.multiplicative_order() == Some(self.spec.size() - 1)
    }

    /// Square root; squaring is a bijection in characteristic 2, so √a = a^{2^{m-1}}.
    pub fn sqrt(&self) -> FieldElement {
        let mut x = self.bits;
        for _ in 0..self.spec.m - 1 {
            x = self.spec.mul_bits(x, x);
        }
        FieldElement { spec: self.spec, bits: x }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

/// Sorted divisors of n.
fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn valuation(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub type Block = [[u32; 4]; 4];

const IDENTITY_BLOCK: Block = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// A 4×4 matrix over GF(2^m), or a block-diagonal tuple of them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuzukiMatrix {
    spec: FieldSpec,
    blocks: Vec<Block>,
}

/// Coefficients `[c0, c1, c2, c3]` of λ⁴ + c3λ³ + c2λ² + c1λ + c0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly(pub [u32; 4]);

impl SuzukiMatrix {
    pub fn new(spec: FieldSpec, entries: [[u32; 4]; 4]) -> Result<SuzukiMatrix, FieldError> {
        SuzukiMatrix::block_diagonal(spec, vec![entries])
    }

    pub fn block_diagonal(spec: FieldSpec, blocks: Vec<Block>) -> Result<SuzukiMatrix, FieldError> {
        if blocks.is_empty() {
            return Err(FieldError::Notation("no blocks".into()));
        }
        for b in &blocks {
            for row in b {
                for &e in row {
                    if e as u64 >= spec.size() {
                        return Err(FieldError::Notation(format!("entry {e:#x} outside {spec}")));
                    }
                }
            }
        }
        let m = SuzukiMatrix { spec, blocks };
        if m.blocks.iter().any(|b| det_block(&spec, b) == 0) {
            return Err(FieldError::Singular);
        }
        Ok(m)
    }

    pub fn from_elements(entries: [[FieldElement; 4]; 4]) -> Result<SuzukiMatrix, FieldError> {
        let spec = entries[0][0].spec;
        let mut raw = [[0u32; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                if entries[i][j].spec != spec {
                    return Err(FieldError::SpecMismatch(spec.m, entries[i][j].spec.m));
                }
                raw[i][j] = entries[i][j].bits;
            }
        }
        SuzukiMatrix::new(spec, raw)
    }

    pub fn identity(spec: FieldSpec, blocks: usize) -> SuzukiMatrix {
        SuzukiMatrix { spec, blocks: vec![IDENTITY_BLOCK; blocks] }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> SuzukiMatrix {
        SuzukiMatrix { spec: self.spec, blocks: vec![self.blocks[i]] }
    }

    pub fn entry(&self, row: usize, col: usize) -> FieldElement {
        self.spec.element(self.blocks[0][row][col])
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| *b == IDENTITY_BLOCK)
    }

    fn check(&self, other: &SuzukiMatrix) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch(self.spec.m, other.spec.m));
        }
        if self.blocks.len() != other.blocks.len() {
            return Err(FieldError::Notation(format!(
                "block count mismatch: {} vs {}",
                self.blocks.len(),
                other.blocks.len()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &SuzukiMatrix) -> Result<SuzukiMatrix, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &SuzukiMatrix) -> SuzukiMatrix {
        let spec = self.spec;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let mut c = [[0u32; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        let mut acc = 0;
                        for k in 0..4 {
                            acc ^= spec.mul_bits(a[i][k], b[k][j]);
                        }
                        c[i][j] = acc;
                    }
                }
                c
            })
            .collect();
        SuzukiMatrix { spec, blocks }
    }

    pub fn det(&self) -> FieldElement {
        let d = self.blocks.iter().fold(1u32, |acc, b| self.spec.mul_bits(acc, det_block(&self.spec, b)));
        self.spec.element(d)
    }

    /// Inverse via the adjugate.
    pub fn inv(&self) -> Result<SuzukiMatrix, FieldError> {
        let spec = self.spec;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let det = det_block(&spec, b);
            let det_inv = spec.inv_bits(det).ok_or(FieldError::Singular)?;
            let mut out = [[0u32; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    // adj[i][j] = cofactor(j, i); signs vanish in characteristic 2.
                    out[i][j] = spec.mul_bits(minor3(&spec, b, j, i), det_inv);
                }
            }
            blocks.push(out);
        }
        Ok(SuzukiMatrix { spec, blocks })
    }

    pub fn pow(&self, k: i64) -> Result<SuzukiMatrix, FieldError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = SuzukiMatrix::identity(self.spec, self.blocks.len());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&b);
            }
            b = b.mul_unchecked(&b);
            e >>= 1;
        }
        Ok(result)
    }

    pub fn trace(&self) -> FieldElement {
        let b = &self.blocks[0];
        self.spec.element(b[0][0] ^ b[1][1] ^ b[2][2] ^ b[3][3])
    }

    /// Characteristic polynomial of the first block.
    pub fn char_poly(&self) -> CharPoly {
        char_poly_block(&self.spec, &self.blocks[0])
    }

    pub fn char_polys(&self) -> Vec<CharPoly> {
        self.blocks.iter().map(|b| char_poly_block(&self.spec, b)).collect()
    }

    /// Candidate orders of ²B₂(q) elements: divisors of 4, q−1, q±√(2q)+1.
    pub fn suzuki_candidate_orders(spec: &FieldSpec) -> Vec<u64> {
        let q = spec.size();
        let r = spec.sqrt_2q();
        let mut c: Vec<u64> = [4, q - 1, q + r + 1, q - r + 1].iter().flat_map(|&n| divisors(n)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    fn block_order(&self, b: &Block, bound: u64) -> Result<u64, FieldError> {
        let single = SuzukiMatrix { spec: self.spec, blocks: vec![*b] };
        for d in SuzukiMatrix::suzuki_candidate_orders(&self.spec) {
            if single.pow(d as i64)?.is_identity() {
                return Ok(d);
            }
        }
        // every order in GL₄(q), q even, divides 4·lcm(q−1, q²−1, q³−1, q⁴−1)
        let q = self.spec.size() as u128;
        let parts = [q - 1, q + 1, q * q + q + 1, q * q + 1];
        let mut primes: Vec<u128> = vec![2];
        for &n in &parts {
            primes.extend(prime_factors(n));
        }
        primes.sort_unstable();
        primes.dedup();
        let powers = [q - 1, q * q - 1, q * q * q - 1, q * q * q * q - 1];
        let exponent: Vec<(u128, u32)> = primes
            .iter()
            .map(|&p| {
                let v = powers.iter().map(|&n| valuation(n, p)).max().unwrap_or(0);
                (p, if p == 2 { v + 2 } else { v })
            })
            .collect();
        let n: u128 = exponent.iter().map(|&(p, v)| p.pow(v)).product();
        let mut order: u128 = 1;
        for &(p, v) in &exponent {
            let mut m = single.pow_u128(n / p.pow(v));
            let mut k = 0;
            while !m.is_identity() {
                if k == v {
                    return Err(FieldError::OrderBound(bound));
                }
                m = m.pow_u128(p);
                k += 1;
            }
            order *= p.pow(k);
        }
        u64::try_from(order).ok().filter(|&o| o <= bound).ok_or(FieldError::OrderBound(bound))
    }

    fn pow_u128(&self, mut e: u128) -> SuzukiMatrix {
        let mut base = self.clone();
        let mut acc = SuzukiMatrix::identity(self.spec, self.blocks.len());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Least k ≥ 1 with A^k = I; Suzuki candidate orders first, then iteration up to `bound`.
    pub fn element_order(&self, bound: u64) -> Result<u64, FieldError> {
        let mut order = 1u64;
        for b in &self.blocks {
            order = order.lcm(&self.block_order(b, bound)?);
        }
        Ok(order)
    }

    /// Right null space of (A − λI) on the first block, as basis vectors.
    pub fn eigenvectors(&self, lambda: u32) -> Vec<[u32; 4]> {
        null_space(&self.spec, &shifted(&self.blocks[0], lambda))
    }

    /// Eigenvalues of the first block lying in the field.
    pub fn eigenvalues(&self) -> Vec<u32> {
        let b = &self.blocks[0];
        (1..self.spec.size() as u32).filter(|&l| det_block(&self.spec, &shifted(b, l)) == 0).collect()
    }

    /// A nonzero vector spanning a line preserved by both matrices (first
    /// blocks), acting on column vectors.
    pub fn common_eigenvector(&self, other: &SuzukiMatrix) -> Option<[u32; 4]> {
        let (a, b) = (&self.blocks[0], &other.blocks[0]);
        for la in self.eigenvalues() {
            for lb in other.eigenvalues() {
                let mut rows = shifted(a, la).to_vec();
                rows.extend_from_slice(&shifted(b, lb));
                if let Some(v) = null_space(&self.spec, &rows).into_iter().next() {
                    return Some(v);
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> SuzukiMatrix {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut t = [[0u32; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        t[i][j] = b[j][i];
                    }
                }
                t
            })
            .collect();
        SuzukiMatrix { spec: self.spec, blocks }
    }

    pub fn apply(&self, v: &[u32; 4]) -> [u32; 4] {
        let b = &self.blocks[0];
        let mut out = [0u32; 4];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *o ^= self.spec.mul_bits(b[i][j], *vj);
            }
        }
        out
    }

    /// Projective point of a nonzero vector: scaled so its first nonzero coordinate is 1.
    pub fn projective(&self, v: &[u32; 4]) -> Option<[u32; 4]> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = self.spec.inv_bits(lead)?;
        Some(v.map(|c| self.spec.mul_bits(c, inv)))
    }

    /// Orbit of the projective point of `start` under the first block of the
    /// given matrices.
    pub fn projective_orbit(gens: &[SuzukiMatrix], start: [u32; 4]) -> HashSet<[u32; 4]> {
        let mut seen = HashSet::new();
        let Some(first) = gens.first() else { return seen };
        let Some(p) = first.projective(&start) else { return seen };
        let mut queue = vec![p];
        seen.insert(p);
        while let Some(v) = queue.pop() {
            for g in gens {
                let w = g.projective(&g.apply(&v)).expect("invertible");
                if seen.insert(w) {
                    queue.push(w);
                }
            }
        }
        seen
    }

    /// Hex notation: 16 masks per block, row-major, blocks separated by `|`.
    pub fn to_hex(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().flat_map(|row| row.iter().map(|e| format!("{e:x}"))).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    pub fn parse_hex(spec: FieldSpec, text: &str) -> Result<SuzukiMatrix, FieldError> {
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let vals: Vec<u32> = part
                .split_whitespace()
                .map(|t| {
                    let t = t.trim_start_matches("0x");
                    u32::from_str_radix(t, 16).map_err(|_| FieldError::Notation(format!("bad hex entry '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            if vals.len() != 16 {
                return Err(FieldError::Notation(format!("expected 16 entries per block, found {}", vals.len())));
            }
            let mut b = [[0u32; 4]; 4];
            for (k, v) in vals.into_iter().enumerate() {
                b[k / 4][k % 4] = v;
            }
            blocks.push(b);
        }
        SuzukiMatrix::block_diagonal(spec, blocks)
    }

    pub fn direct_sum(parts: &[&SuzukiMatrix]) -> SuzukiMatrix {
        let spec = parts[0].spec;
        SuzukiMatrix { spec, blocks: parts.iter().flat_map(|p| p.blocks.iter().copied()).collect() }
    }
}

impl fmt::Debug for SuzukiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_hex())
    }
}

fn shifted(b: &Block, lambda: u32) -> Block {
    let mut m = *b;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] ^= lambda;
    }
    m
}

fn minor3(spec: &FieldSpec, b: &Block, skip_row: usize, skip_col: usize) -> u32 {
    let rows: Vec<usize> = (0..4).filter(|&r| r != skip_row).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != skip_col).collect();
    det3(spec, |i, j| b[rows[i]][cols[j]])
}

fn det3(spec: &FieldSpec, e: impl Fn(usize, usize) -> u32) -> u32 {
    let m = |a, b| spec.mul_bits(a, b);
    m(e(0, 0), m(e(1, 1), e(2, 2)) ^ m(e(1, 2), e(2, 1)))
        ^ m(e(0, 1), m(e(1, 0), e(2, 2)) ^ m(e(1, 2), e(2, 0)))
        ^ m(e(0, 2), m(e(1, 0), e(2, 1)) ^ m(e(1, 1), e(2, 0)))
}

fn det_block(spec: &FieldSpec, b: &Block) -> u32 {
    (0..4).fold(0, |acc, j| acc ^ spec.mul_bits(b[0][j], minor3(spec, b, 0, j)))
}

fn char_poly_block(spec: &FieldSpec, b: &Block) -> CharPoly {
    let m = |x, y| spec.mul_bits(x, y);
    let c3 = b[0][0] ^ b[1][1] ^ b[2][2] ^ b[3][3];
    let mut c2 = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            c2 ^= m(b[i][i], b[j][j]) ^ m(b[i][j], b[j][i]);
        }
    }
    let mut c1 = 0;
    for skip in 0..4 {
        c1 ^= minor3(spec, b, skip, skip);
    }
    let c0 = det_block(spec, b);
    CharPoly([c0, c1, c2, c3])
}

fn null_space(spec: &FieldSpec, rows: &[[u32; 4]]) -> Vec<[u32; 4]> {
    let mut m = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..4 {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, p);
        let inv = spec.inv_bits(m[row][col]).unwrap();
        for c in 0..4 {
            m[row][c] = spec.mul_bits(m[row][c], inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..4 {
                    m[r][c] ^= spec.mul_bits(f, m[row][c]);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..4).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = [0u32; 4];
            v[f] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = m[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldSpec {
        FieldSpec::default_for(3).unwrap()
    }

    /// Upper unitriangular times lower unitriangular: invertible, full entries.
    fn mixed(f: FieldSpec) -> SuzukiMatrix {
        let u = SuzukiMatrix::new(f, [[1, 2, 3, 4], [0, 1, 5, 6], [0, 0, 1, 7], [0, 0, 0, 1]]).unwrap();
        let l = SuzukiMatrix::new(f, [[1, 0, 0, 0], [3, 1, 0, 0], [6, 2, 1, 0], [5, 4, 7, 1]]).unwrap();
        u.mul(&l).unwrap()
    }

    #[test]
    fn defaults_are_irreducible() {
        for m in [3, 5, 7, 9, 11] {
            let s = FieldSpec::default_for(m).unwrap();
            assert!(is_irreducible(s.modulus() as u64));
        }
        assert!(FieldSpec::new(3, 0b1001).is_err()); // x³+1 = (x+1)(x²+x+1)
        assert!(FieldSpec::new(4, 0b10011).is_err());
    }

    #[test]
    fn gf8_arithmetic() {
        let f = gf8();
        let x = f.element(0b010);
        let x2 = f.element(0b100);
        assert_eq!(x.mul(&x2).unwrap().bits(), 0b011);
        assert_eq!(x.pow(7).unwrap(), f.one());
        assert_eq!(x.inv().unwrap().bits(), 0b101);
        assert_eq!(x.pow(3).unwrap().bits(), 0b011);
        assert_eq!(x.pow(-3).unwrap().bits(), 0b110);
        assert!(f.zero().inv().is_err());
        let g32 = FieldSpec::default_for(5).unwrap();
        assert!(x.add(&g32.one()).is_err());
    }

    #[test]
    fn gamma_for_beta_x() {
        let f = gf8();
        let beta = f.element(0b010);
        let s = f.sqrt_2q() as i64;
        let gamma = [1, -1, s - 1, 1 - s].iter().fold(f.zero(), |acc, &k| acc.add(&beta.pow(k).unwrap()).unwrap());
        assert_eq!(gamma.bits(), 0b010);
        assert_eq!(gamma.sqrt().bits(), 0b110);
    }

    #[test]
    fn char_poly_identity_and_trace() {
        let f = FieldSpec::default_for(5).unwrap();
        let id = SuzukiMatrix::identity(f, 1);
        // (λ+1)^4 = λ^4 + 1 in characteristic 2
        assert_eq!(id.char_poly(), CharPoly([1, 0, 0, 0]));
        let a = mixed(f);
        assert_eq!(a.char_poly().0[3], a.trace().bits());
        assert_eq!(a.char_poly().0[0], a.det().bits());
    }

    #[test]
    fn inverse_and_orders() {
        let f = gf8();
        let a = mixed(f);
        assert!(a.mul(&a.inv().unwrap()).unwrap().is_identity());
        assert_eq!(SuzukiMatrix::identity(f, 1).element_order(10).unwrap(), 1);
        let t1 = SuzukiMatrix::new(f, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]).unwrap();
        assert!(t1.pow(2).unwrap().is_identity());
        assert_eq!(t1.element_order(10).unwrap(), 2);
    }

    #[test]
    fn null_space_of_diagonal() {
        let f = gf8();
        let d = SuzukiMatrix::new(f, [[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]).unwrap();
        let vs = d.eigenvectors(2);
        assert_eq!(vs.len(), 2);
        for v in vs {
            let w = d.apply(&v);
            assert_eq!(w, v.map(|e| f.mul_bits(e, 2)));
        }
        assert!(d.eigenvectors(5).is_empty());
        let e = SuzukiMatrix::new(f, [[2, 0, 0, 0], [1, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 1]]).unwrap();
        // both fix the line through e4
        assert_eq!(d.common_eigenvector(&e), Some([0, 0, 0, 1]));
        let t1 = SuzukiMatrix::new(f, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]).unwrap();
        assert!(d.common_eigenvector(&t1).is_none());
    }

    #[test]
    fn hex_round_trip() {
        let f = gf8();
        let a = SuzukiMatrix::new(f, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 6], [1, 0, 6, 7]]).unwrap();
        let two = SuzukiMatrix::direct_sum(&[&a, &a]);
        assert_eq!(SuzukiMatrix::parse_hex(f, &two.to_hex()).unwrap(), two);
        assert!(SuzukiMatrix::parse_hex(f, "0 0 1").is_err());
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(m in proptest::sample::select(vec![3u32, 5, 7]), a in 0u32..128, b in 0u32..128, c in 0u32..128) {
            let f = FieldSpec::default_for(m).unwrap();
            let mask = (1 << m) - 1;
            let (a, b, c) = (f.element(a & mask), f.element(b & mask), f.element(c & mask));
            let add = |x: &FieldElement, y: &FieldElement| x.add(y).unwrap();
            let mul = |x: &FieldElement, y: &FieldElement| x.mul(y).unwrap();
            proptest::prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
            proptest::prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            proptest::prop_assert_eq!(mul(&a.sqrt(), &a.sqrt()), a);
            if !a.is_zero() {
                proptest::prop_assert_eq!(mul(&a, &a.inv().unwrap()), f.one());
                proptest::prop_assert_eq!(a.pow(f.size() as i64 - 1).unwrap(), f.one());
            }
        }
    }
}
