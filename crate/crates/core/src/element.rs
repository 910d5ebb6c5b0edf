//! A single element type covering both permutation and matrix groups.

use std::fmt;

use crate::field::{CharPoly, FieldSpec, SuzukiMatrix};
use crate::perm::{CycleType, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Permutation),
    Matrix(SuzukiMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Permutation { degree: usize },
    Matrix { spec: FieldSpec, blocks: usize },
}

/// Conjugation-invariant data used to refute conjugacy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Perm { order: u64, cycle_types: Vec<CycleType> },
    Matrix { order: u64, char_polys: Vec<CharPoly> },
}

impl Invariant {
    pub fn order(&self) -> u64 {
        match self {
            Invariant::Perm { order, .. } | Invariant::Matrix { order, .. } => *order,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Perm { order, cycle_types } => {
                let parts: Vec<String> = cycle_types.iter().map(|c| c.to_string()).collect();
                write!(f, "order {order}, cycles {}", parts.join(" / "))
            }
            Invariant::Matrix { order, char_polys } => {
                let parts: Vec<String> = char_polys
                    .iter()
                    .map(|p| format!("[{:x},{:x},{:x},{:x}]", p.0[0], p.0[1], p.0[2], p.0[3]))
                    .collect();
                write!(f, "order {order}, charpoly {}", parts.join(" / "))
            }
        }
    }
}

/// Upper bound used when computing matrix orders by iteration.
pub(crate) fn matrix_order_bound(spec: &FieldSpec) -> u64 {
    spec.size().pow(4)
}

impl Element {
    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Perm(p) => ElementKind::Permutation { degree: p.degree() },
            Element::Matrix(m) => ElementKind::Matrix { spec: m.spec(), blocks: m.block_count() },
        }
    }

    pub fn identity(kind: ElementKind) -> Element {
        match kind {
            ElementKind::Permutation { degree } => Element::Perm(Permutation::identity(degree)),
            ElementKind::Matrix { spec, blocks } => Element::Matrix(SuzukiMatrix::identity(spec, blocks)),
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            Element::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&SuzukiMatrix> {
        match self {
            Element::Matrix(m) => Some(m),
            Element::Perm(_) => None,
        }
    }

    /// Product `self · other`: for permutations apply `self` first.
    ///
    /// Panics when the kinds differ; groups validate kinds on construction.
    pub fn op(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.then(b)),
            (Element::Matrix(a), Element::Matrix(b)) => {
                assert_eq!(self.kind(), other.kind(), "matrix kind mismatch");
                Element::Matrix(a.mul_unchecked(b))
            }
            _ => panic!("cannot multiply a permutation by a matrix"),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Matrix(m) => Element::Matrix(m.inv().expect("group elements are invertible")),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Matrix(m) => m.is_identity(),
        }
    }

    pub fn pow(&self, k: i64) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(p.power(k)),
            Element::Matrix(m) => Element::Matrix(m.pow(k).expect("group elements are invertible")),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            Element::Perm(p) => p.order(),
            Element::Matrix(m) => m.element_order(matrix_order_bound(&m.spec())).expect("matrix order within q^4"),
        }
    }

    /// `self^g = g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Element) -> Element {
        g.inverse().op(self).op(g)
    }

    pub fn commutes_with(&self, other: &Element) -> bool {
        self.op(other) == other.op(self)
    }

    /// Invariant with cycle types taken per block when `blocks` is given.
    pub fn invariant(&self, blocks: Option<&[Vec<usize>]>) -> Invariant {
        match self {
            Element::Perm(p) => {
                let cycle_types = match blocks {
                    Some(bs) => bs.iter().map(|b| p.cycle_type_on(b)).collect(),
                    None => vec![p.cycle_type()],
                };
                Invariant::Perm { order: p.order(), cycle_types }
            }
            Element::Matrix(m) => Invariant::Matrix { order: self.order(), char_polys: m.char_polys() },
        }
    }

    /// Number of direct factors this element naturally carries (matrix blocks).
    pub fn matrix_blocks(&self) -> usize {
        match self {
            Element::Matrix(m) => m.block_count(),
            Element::Perm(_) => 1,
        }
    }

    /// Text form: cycle notation or hex matrix notation.
    pub fn notation(&self) -> String {
        match self {
            Element::Perm(p) => p.to_string(),
            Element::Matrix(m) => m.to_hex(),
        }
    }

    pub fn parse(kind: ElementKind, text: &str) -> Result<Element, String> {
        match kind {
            ElementKind::Permutation { degree } => {
                Permutation::parse(text, degree).map(Element::Perm).map_err(|e| e.to_string())
            }
            ElementKind::Matrix { spec, blocks } => {
                let m = SuzukiMatrix::parse_hex(spec, text).map_err(|e| e.to_string())?;
                if m.block_count() != blocks {
                    return Err(format!("expected {blocks} matrix blocks, found {}", m.block_count()));
                }
                Ok(Element::Matrix(m))
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p:?}"),
            Element::Matrix(m) => write!(f, "{m:?}"),
        }
    }
}

impl From<Permutation> for Element {
    fn from(p: Permutation) -> Element {
        Element::Perm(p)
    }
}

impl From<SuzukiMatrix> for Element {
    fn from(m: SuzukiMatrix) -> Element {
        Element::Matrix(m)
    }
}
