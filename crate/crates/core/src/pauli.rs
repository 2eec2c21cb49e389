//! Phase-free N-qubit Pauli group, sign-tracked products and the
//! symplectic commutation form.
//!
//! Qubit `k` of an element is the `k`-th character of its string form and
//! bit `k` of the `x`/`z` words: `I=(0,0)`, `X=(1,0)`, `Z=(0,1)`, `Y=(1,1)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliElement {
    width: u8,
    x: u64,
    z: u64,
}

#[inline]
fn mask(width: usize) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl PauliElement {
    pub fn identity(width: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&width), "unsupported qubit count {width}");
        Self { width: width as u8, x: 0, z: 0 }
    }

    pub fn from_bits(width: usize, x: u64, z: u64) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&width) {
            return Err(Error::InvalidParameter(format!("unsupported qubit count {width}")));
        }
        if (x | z) & !mask(width) != 0 {
            return Err(Error::InvalidParameter(format!("bits exceed {width} qubits")));
        }
        Ok(Self { width: width as u8, x, z })
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Single-qubit factor `k` as one of `I`, `X`, `Y`, `Z`.
    pub fn letter(&self, k: usize) -> char {
        match ((self.x >> k) & 1, (self.z >> k) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    fn check_width(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch { left: self.width(), right: other.width() });
        }
        Ok(())
    }

    /// Product in the factor group: componentwise XOR.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_width(other)?;
        Ok(Self { width: self.width, x: self.x ^ other.x, z: self.z ^ other.z })
    }

    /// `<a,b> = sum_k a.x_k b.z_k + a.z_k b.x_k (mod 2)`; zero iff the two
    /// operators commute.
    pub fn symplectic_form(&self, other: &Self) -> Result<u8> {
        self.check_width(other)?;
        Ok((((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) & 1) as u8)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.symplectic_form(other)? == 0)
    }

    /// `x` in the low `width` bits, `z` above.
    pub fn to_symplectic_vector(&self) -> u128 {
        self.x as u128 | ((self.z as u128) << self.width)
    }

    /// Uses only the given letters (plus identity slots).
    pub fn uses_only(&self, letters: &[char]) -> bool {
        (0..self.width()).all(|k| {
            let c = self.letter(k);
            c == 'I' || letters.contains(&c)
        })
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.width() {
            write!(f, "{}", self.letter(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let width = s.chars().count();
        if !(1..=MAX_QUBITS).contains(&width) {
            return Err(Error::Parse {
                line: 0,
                message: format!("Pauli string '{s}' must have 1..={MAX_QUBITS} letters"),
            });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (k, c) in s.chars().enumerate() {
            let (xb, zb) = match c {
                'I' => (0, 0),
                'X' => (1, 0),
                'Z' => (0, 1),
                'Y' => (1, 1),
                other => {
                    return Err(Error::Parse { line: 0, message: format!("illegal Pauli letter '{other}' in '{s}'") })
                }
            };
            x |= xb << k;
            z |= zb << k;
        }
        Ok(Self { width: width as u8, x, z })
    }
}

impl Serialize for PauliElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `i^phase · element`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub element: PauliElement,
    phase: u8,
}

// Phase exponent of single-qubit products, indexed by x | z << 1
// (I=0, X=1, Z=2, Y=3): e.g. X·Y = iZ, Y·X = -iZ.
const SINGLE_QUBIT_PHASE: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 0, 3, 1], [0, 1, 0, 3], [0, 3, 1, 0]];

impl SignedPauli {
    pub fn new(element: PauliElement, phase: u8) -> Self {
        Self { element, phase: phase & 3 }
    }

    pub fn hermitian(element: PauliElement) -> Self {
        Self::new(element, 0)
    }

    /// The `α` in `i^α`, always in `0..4`.
    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let element = self.element.mul(&other.element)?;
        let mut phase = self.phase as u32 + other.phase as u32;
        for k in 0..self.element.width() {
            let a = (((self.element.x >> k) & 1) | (((self.element.z >> k) & 1) << 1)) as usize;
            let b = (((other.element.x >> k) & 1) | (((other.element.z >> k) & 1) << 1)) as usize;
            phase += SINGLE_QUBIT_PHASE[a][b] as u32;
        }
        Ok(Self { element, phase: (phase & 3) as u8 })
    }

    /// `Some(±1)` when this is `±identity`.
    pub fn identity_sign(&self) -> Option<i8> {
        if !self.element.is_identity() {
            return None;
        }
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

pub fn mul_signed(a: &SignedPauli, b: &SignedPauli) -> Result<SignedPauli> {
    a.mul(b)
}

pub fn symplectic_form(a: &PauliElement, b: &PauliElement) -> Result<u8> {
    a.symplectic_form(b)
}

/// Signs of the six contexts (rows 0..3 then columns 0..3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicSquareVerdict {
    pub context_signs: [i8; 6],
    pub is_magic: bool,
}

impl MagicSquareVerdict {
    pub fn sign_product(&self) -> i8 {
        self.context_signs.iter().product()
    }
}

/// Every row and column must be a mutually commuting triple whose ordered
/// signed product is ±identity; the square is magic when the six signs
/// multiply to -1.
pub fn verify_magic_square(grid: &[[PauliElement; 3]; 3]) -> Result<MagicSquareVerdict> {
    let width = grid[0][0].width();
    for row in grid {
        for e in row {
            if e.width() != width {
                return Err(Error::WidthMismatch { left: width, right: e.width() });
            }
        }
    }
    let mut context_signs = [0i8; 6];
    for c in 0..6 {
        let (name, cells): (String, [PauliElement; 3]) = if c < 3 {
            (format!("row {c}"), grid[c])
        } else {
            let j = c - 3;
            (format!("column {j}"), [grid[0][j], grid[1][j], grid[2][j]])
        };
        for i in 0..3 {
            for j in i + 1..3 {
                if !cells[i].commutes_with(&cells[j])? {
                    return Err(Error::NotMagic(format!("{name}: {} and {} anticommute", cells[i], cells[j])));
                }
            }
        }
        let product = cells.iter().try_fold(SignedPauli::hermitian(PauliElement::identity(width)), |acc, e| {
            acc.mul(&SignedPauli::hermitian(*e))
        })?;
        context_signs[c] =
            product.identity_sign().ok_or_else(|| Error::NotMagic(format!("{name} does not multiply to ±identity")))?;
    }
    let is_magic = context_signs.iter().product::<i8>() == -1;
    Ok(MagicSquareVerdict { context_signs, is_magic })
}

/// Indices of the triples whose three labels pairwise commute.
pub fn isotropic_lines(lines: &[[PauliElement; 3]]) -> Vec<usize> {
    lines
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            (0..3).all(|i| (i + 1..3).all(|j| t[i].symplectic_form(&t[j]).map(|f| f == 0).unwrap_or(false)))
        })
        .map(|(i, _)| i)
        .collect()
}

/// Generalized quadrangle of order (s, t): lines of size s+1, t+1 lines per
/// point, and for every non-incident point/line pair exactly one point of
/// the line collinear with the point.
pub fn check_generalized_quadrangle<P: Copy + Eq + Hash>(points: &[P], lines: &[Vec<P>], s: usize, t: usize) -> bool {
    let index: HashMap<P, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    if index.len() != points.len() {
        return false;
    }
    let mut lines_idx: Vec<Vec<usize>> = Vec::with_capacity(lines.len());
    for l in lines {
        let Some(li) = l.iter().map(|p| index.get(p).copied()).collect::<Option<Vec<_>>>() else {
            return false;
        };
        if li.len() != s + 1 || li.iter().collect::<HashSet<_>>().len() != li.len() {
            return false;
        }
        lines_idx.push(li);
    }
    let n = points.len();
    let mut collinear = vec![vec![false; n]; n];
    let mut degree = vec![0usize; n];
    for l in &lines_idx {
        for &a in l {
            degree[a] += 1;
            for &b in l {
                if a != b {
                    if collinear[a][b] {
                        // two lines through the same pair
                        return false;
                    }
                    collinear[a][b] = true;
                }
            }
        }
    }
    if degree.iter().any(|&d| d != t + 1) {
        return false;
    }
    lines_idx
        .iter()
        .all(|l| (0..n).filter(|p| !l.contains(p)).all(|p| l.iter().filter(|&&q| collinear[p][q]).count() == 1))
}

/// GQ(2,2) check for a 15-point, 15-line structure.
pub fn check_gq22<P: Copy + Eq + Hash>(points: &[P], lines: &[[P; 3]]) -> Result<bool> {
    if points.len() != 15 || lines.len() != 15 {
        return Err(Error::Structural(format!(
            "GQ(2,2) needs 15 points and 15 lines, got {} and {}",
            points.len(),
            lines.len()
        )));
    }
    let lines: Vec<Vec<P>> = lines.iter().map(|l| l.to_vec()).collect();
    Ok(check_generalized_quadrangle(points, &lines, 2, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCheck {
    pub closed: bool,
    pub rank: usize,
    pub nondegenerate: bool,
}

/// Closure of `labels ∪ {identity}` under multiplication, GF(2) rank of the
/// (x|z) vectors, and whether the symplectic form on their span is
/// nondegenerate.
pub fn check_subgroup(labels: &[PauliElement]) -> Result<SubgroupCheck> {
    let Some(first) = labels.first() else {
        return Err(Error::InvalidParameter("empty label set".into()));
    };
    let width = first.width();
    if let Some(bad) = labels.iter().find(|l| l.width() != width) {
        return Err(Error::WidthMismatch { left: width, right: bad.width() });
    }
    let mut set: HashSet<PauliElement> = labels.iter().copied().collect();
    set.insert(PauliElement::identity(width));
    let closed = set.iter().all(|a| set.iter().all(|b| set.contains(&a.mul(b).expect("same width"))));

    let basis = gf2_basis(labels.iter().map(|l| l.to_symplectic_vector()));
    let rank = basis.len();
    let to_elem = |v: u128| {
        PauliElement::from_bits(width, (v as u64) & mask(width), ((v >> width) as u64) & mask(width))
            .expect("within width")
    };
    let gram: Vec<u128> = basis
        .iter()
        .map(|&a| {
            basis.iter().enumerate().fold(0u128, |row, (j, &b)| {
                let f = to_elem(a).symplectic_form(&to_elem(b)).expect("same width");
                row | ((f as u128) << j)
            })
        })
        .collect();
    let nondegenerate = gf2_basis(gram).len() == rank;
    Ok(SubgroupCheck { closed, rank, nondegenerate })
}

/// Row-reduced basis of the span of `vectors`.
pub(crate) fn gf2_basis(vectors: impl IntoIterator<Item = u128>) -> Vec<u128> {
    let mut basis: Vec<u128> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// All `4^n - 1` non-identity elements on `n` qubits, in (x, z) order.
pub fn all_non_identity(width: usize) -> Vec<PauliElement> {
    assert!(width <= 16, "too many qubits to list");
    let side = 1u64 << width;
    (0..side)
        .flat_map(|x| (0..side).map(move |z| (x, z)))
        .filter(|&(x, z)| x | z != 0)
        .map(|(x, z)| PauliElement::from_bits(width, x, z).expect("within width"))
        .collect()
}
