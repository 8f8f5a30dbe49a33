//! Generator symbols, their canonical order, and the index conventions of
//! four-dimensional Minkowski space.

use std::cmp::Ordering;
use std::fmt;

/// A primitive generator of the algebra. Indices are concrete (0..=3) and
/// always lowered; `J(i, j)` is stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    P(u8),
    W(u8),
    J(u8, u8),
    D,
    C(u8),
    Gamma,
    Eps,
}

/// The six stored `J` index pairs in rank order.
pub const J_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl Gen {
    /// Position in the fixed total order
    /// `P < W < J01..J23 < D < C < γ < ε`.
    pub fn rank(&self) -> u8 {
        match *self {
            Gen::P(i) => i,
            Gen::W(i) => 4 + i,
            Gen::J(i, j) => 8 + J_PAIRS.iter().position(|&p| p == (i, j)).expect("J stored with i<j") as u8,
            Gen::D => 14,
            Gen::C(i) => 15 + i,
            Gen::Gamma => 19,
            Gen::Eps => 20,
        }
    }

    /// `J_ij` for arbitrary indices: `Some((sign, J))`, or `None` when `i == j`.
    pub fn j(i: u8, j: u8) -> Option<(i64, Gen)> {
        match i.cmp(&j) {
            Ordering::Less => Some((1, Gen::J(i, j))),
            Ordering::Greater => Some((-1, Gen::J(j, i))),
            Ordering::Equal => None,
        }
    }

    /// Conformal weight `w` with `(D, A) = w·A`.
    pub fn weight(&self) -> i32 {
        match self {
            Gen::P(_) | Gen::W(_) => 1,
            Gen::C(_) => -1,
            _ => 0,
        }
    }

    /// The fifteen conformal Lie generators in rank order.
    pub fn lie_basis() -> Vec<Gen> {
        let mut v: Vec<Gen> = (0..4).map(Gen::P).collect();
        v.extend(J_PAIRS.iter().map(|&(i, j)| Gen::J(i, j)));
        v.push(Gen::D);
        v.extend((0..4).map(Gen::C));
        v
    }

    /// Every generator symbol in rank order.
    pub fn all() -> Vec<Gen> {
        let mut v: Vec<Gen> = (0..4).map(Gen::P).collect();
        v.extend((0..4).map(Gen::W));
        v.extend(J_PAIRS.iter().map(|&(i, j)| Gen::J(i, j)));
        v.push(Gen::D);
        v.extend((0..4).map(Gen::C));
        v.push(Gen::Gamma);
        v.push(Gen::Eps);
        v
    }

    /// Commutes with every power of ρ.
    pub fn commutes_with_rho(&self) -> bool {
        !matches!(self, Gen::D | Gen::C(_))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::P(i) => write!(f, "P{}", i),
            Gen::W(i) => write!(f, "W{}", i),
            Gen::J(i, j) => write!(f, "J{}{}", i, j),
            Gen::D => write!(f, "D"),
            Gen::C(i) => write!(f, "C{}", i),
            Gen::Gamma => write!(f, "gamma"),
            Gen::Eps => write!(f, "eps"),
        }
    }
}

/// One factor of a raw word: a generator or a power of ρ = √(P²).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Gen(Gen),
    Rho(i32),
}

impl From<Gen> for Letter {
    fn from(g: Gen) -> Self {
        Letter::Gen(g)
    }
}

/// Minkowski metric `η = diag(+1, −1, −1, −1)`.
pub fn eta(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 0) => 1,
        (x, y) if x == y => -1,
        _ => 0,
    }
}

/// `η_aa`, the sign picked up when raising or lowering index `a`.
pub fn eta_diag(a: usize) -> i64 {
    eta(a, a)
}

/// Totally antisymmetric symbol with upper indices, `ε^{0123} = +1`.
pub fn levi_civita_upper(a: usize, b: usize, c: usize, d: usize) -> i64 {
    let idx = [a, b, c, d];
    for i in 0..4 {
        if idx[i] > 3 {
            return 0;
        }
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0;
            }
        }
    }
    let mut sign = 1;
    let mut v = idx;
    for i in 0..4 {
        for j in 0..3 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Lowered symbol, `ε_{0123} = −1`.
pub fn levi_civita_lower(a: usize, b: usize, c: usize, d: usize) -> i64 {
    levi_civita_upper(a, b, c, d) * eta_diag(a) * eta_diag(b) * eta_diag(c) * eta_diag(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_order_is_total_and_documented() {
        let all = Gen::all();
        for w in all.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
        assert_eq!(all.len(), 21);
    }

    #[test]
    fn j_reversal_and_diagonal() {
        assert_eq!(Gen::j(2, 1), Some((-1, Gen::J(1, 2))));
        assert_eq!(Gen::j(3, 3), None);
    }

    #[test]
    fn levi_civita_conventions() {
        assert_eq!(levi_civita_upper(0, 1, 2, 3), 1);
        assert_eq!(levi_civita_upper(1, 0, 2, 3), -1);
        assert_eq!(levi_civita_upper(0, 0, 2, 3), 0);
        assert_eq!(levi_civita_lower(0, 1, 2, 3), -1);
        assert_eq!(levi_civita_upper(3, 2, 1, 0), 1);
    }
}
