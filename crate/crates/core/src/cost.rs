//! Extended-real costs and cost vectors indexed by the nondestination nodes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, IndexMut};

use crate::error::RspError;
use crate::graph::Node;
use crate::scalar::Scalar;

/// A value in `[-inf, +inf]`.
///
/// Variant order matters: the derived ordering gives `NegInf < Finite(_) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Cost<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> Cost<S> {
    pub fn zero() -> Self {
        Cost::Finite(S::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(&self) -> Option<S> {
        match self {
            Cost::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Adds a finite amount; infinities absorb it.
    pub fn plus(self, amount: S) -> Self {
        match self {
            Cost::Finite(v) => Cost::Finite(v + amount),
            other => other,
        }
    }

    /// Extended sum. `+inf + -inf` has no value and is rejected.
    pub fn checked_add(self, rhs: Self) -> Result<Self, RspError> {
        match (self, rhs) {
            (Cost::PosInf, Cost::NegInf) | (Cost::NegInf, Cost::PosInf) => Err(RspError::IndeterminateSum),
            (Cost::PosInf, _) | (_, Cost::PosInf) => Ok(Cost::PosInf),
            (Cost::NegInf, _) | (_, Cost::NegInf) => Ok(Cost::NegInf),
            (Cost::Finite(a), Cost::Finite(b)) => Ok(Cost::Finite(a + b)),
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Equality with the scalar's slack for finite values.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.approx_eq(*b),
            (a, b) => a == b,
        }
    }

    /// `self < other` by more than the slack.
    pub fn definitely_lt(&self, other: &Self) -> bool {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.definitely_lt(*b),
            (a, b) => a < b,
        }
    }

    /// `self <= other` up to the slack.
    pub fn approx_le(&self, other: &Self) -> bool {
        !other.definitely_lt(self)
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("cost values are never NaN")
    }

    pub fn to_literal(&self) -> String {
        match self {
            Cost::NegInf => "-inf".to_string(),
            Cost::PosInf => "inf".to_string(),
            Cost::Finite(v) => v.to_literal(),
        }
    }

    pub fn parse_literal(text: &str) -> Option<Self> {
        match text.trim() {
            "inf" | "+inf" => Some(Cost::PosInf),
            "-inf" => Some(Cost::NegInf),
            other => S::parse_literal(other).map(Cost::Finite),
        }
    }
}

impl<S: Scalar> From<S> for Cost<S> {
    fn from(v: S) -> Self {
        Cost::Finite(v)
    }
}

impl<S: Scalar> Add for Cost<S> {
    type Output = Cost<S>;

    /// Panics on `+inf + -inf`; use [`Cost::checked_add`] to handle it.
    fn add(self, rhs: Self) -> Self::Output {
        self.checked_add(rhs).expect("indeterminate extended sum")
    }
}

impl<S: Scalar> fmt::Display for Cost<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

/// One cost per nondestination node. The destination's value is implicitly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CostVector<S>(Vec<Cost<S>>);

impl<S: Scalar> CostVector<S> {
    pub fn new(values: Vec<Cost<S>>) -> Self {
        CostVector(values)
    }

    pub fn filled(n: usize, value: Cost<S>) -> Self {
        CostVector(vec![value; n])
    }

    /// The zero function.
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, Cost::zero())
    }

    pub fn infinite(n: usize) -> Self {
        Self::filled(n, Cost::PosInf)
    }

    pub fn from_scalars(values: impl IntoIterator<Item = S>) -> Self {
        CostVector(values.into_iter().map(Cost::Finite).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Cost<S>] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cost<S>> {
        self.0.iter()
    }

    /// Value at any node, with the destination fixed at zero.
    pub fn at(&self, node: Node) -> Cost<S> {
        match node {
            Node::Dest => Cost::zero(),
            Node::State(i) => self.0[i],
        }
    }

    pub fn all_finite(&self) -> bool {
        self.0.iter().all(Cost::is_finite)
    }

    /// Componentwise `self <= other`, exact.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self <= other` up to the slack.
    pub fn approx_le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_le(b))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.approx_eq(b))
    }

    /// Sup-norm distance; `None` when the vectors disagree on an infinite entry.
    pub fn sup_distance(&self, other: &Self) -> Option<S> {
        let mut worst = S::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            match (a, b) {
                (Cost::Finite(x), Cost::Finite(y)) => {
                    let d = (*x - *y).abs();
                    if d > worst {
                        worst = d;
                    }
                }
                (x, y) if x == y => {}
                _ => return None,
            }
        }
        Some(worst)
    }

    /// Componentwise minimum.
    pub fn min(&self, other: &Self) -> Self {
        CostVector(self.0.iter().zip(&other.0).map(|(a, b)| a.min(*b)).collect())
    }

    /// Adds a finite amount to every entry.
    pub fn plus(&self, amount: S) -> Self {
        CostVector(self.0.iter().map(|c| c.plus(amount)).collect())
    }
}

impl<S> Index<usize> for CostVector<S> {
    type Output = Cost<S>;

    fn index(&self, i: usize) -> &Cost<S> {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for CostVector<S> {
    fn index_mut(&mut self, i: usize) -> &mut Cost<S> {
        &mut self.0[i]
    }
}

impl<S: Scalar> fmt::Display for CostVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
