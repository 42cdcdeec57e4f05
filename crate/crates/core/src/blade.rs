//! Canonical blades and the shared sign bookkeeping.
//!
//! A blade is a subset of frame indices `{0, …, 2n-1}` stored as a bitset and
//! read in ascending order. Wedge, contraction and Clifford products all derive
//! their signs from [`reorder_sign`], so the three products cannot drift apart.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Single frame index (0-based).
    pub fn vector(index: usize) -> Self {
        Blade(1 << index)
    }

    pub fn from_indices(indices: &[usize]) -> Option<(Self, i32)> {
        let mut blade = Blade::SCALAR;
        let mut sign = 1;
        for &index in indices {
            let v = Blade::vector(index);
            let (joined, s) = wedge(blade, v)?;
            blade = joined;
            sign *= s;
        }
        Some((blade, sign))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending list of frame indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let names: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e{}", names.join("."))
    }
}

/// Sign `(-1)^t` where `t` counts pairs `(i ∈ a, j ∈ b)` with `i > j`: the
/// parity of the transpositions needed to sort the concatenation `a b`.
pub fn reorder_sign(a: Blade, b: Blade) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a.0 >> (j + 1)).count_ones();
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exterior product of canonical blades.
pub fn wedge(a: Blade, b: Blade) -> Option<(Blade, i32)> {
    if a.0 & b.0 != 0 {
        None
    } else {
        Some((Blade(a.0 | b.0), reorder_sign(a, b)))
    }
}

/// Clifford product of canonical blades with `e·e = -1`.
pub fn clifford(a: Blade, b: Blade) -> (Blade, i32) {
    let common = (a.0 & b.0).count_ones();
    let sign = reorder_sign(a, b) * if common.is_multiple_of(2) { 1 } else { -1 };
    (Blade(a.0 ^ b.0), sign)
}

/// Left contraction `a ⌟ b`: the transpose of wedging by `a`.
pub fn contract(a: Blade, b: Blade) -> Option<(Blade, i32)> {
    if !a.is_subset_of(b) {
        return None;
    }
    let rest = Blade(b.0 & !a.0);
    Some((rest, reorder_sign(a, rest)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_orders_and_alternates() {
        let e1 = Blade::vector(0);
        let e2 = Blade::vector(1);
        assert_eq!(wedge(e1, e2), Some((Blade(0b11), 1)));
        assert_eq!(wedge(e2, e1), Some((Blade(0b11), -1)));
        assert_eq!(wedge(e1, e1), None);
    }

    #[test]
    fn clifford_squares() {
        let e1 = Blade::vector(0);
        let e12 = Blade(0b11);
        assert_eq!(clifford(e1, e1), (Blade::SCALAR, -1));
        assert_eq!(clifford(e1, e12), (Blade::vector(1), -1));
        // (e1 e2)^2 = -1
        assert_eq!(clifford(e12, e12), (Blade::SCALAR, -1));
    }

    #[test]
    fn contraction_is_wedge_transpose() {
        for a in 0..16u32 {
            for t in 0..16u32 {
                if let Some((y, s)) = wedge(Blade(a), Blade(t)) {
                    assert_eq!(contract(Blade(a), y), Some((Blade(t), s)));
                }
            }
        }
    }

    #[test]
    fn from_indices_sorts_with_sign() {
        assert_eq!(Blade::from_indices(&[2, 0]), Some((Blade(0b101), -1)));
        assert_eq!(Blade::from_indices(&[1, 1]), None);
        assert_eq!(Blade(0b101).to_string(), "e1.3");
    }
}
