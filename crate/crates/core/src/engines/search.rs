//! Bounded search for moves `g₁, …, g_l` making `(g_l ⋯ g₁)(A)` symmetric or
//! skew under an involution of class −1.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::endo::Endo;
use crate::field::FieldElement;
use crate::involution::{symmetry_type, Builtin, SymmetryType};
use crate::poly::{Poly, UniPoly};

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub depth: u32,
    /// Largest degree of `h` in an elementary move `x ↦ x + h(y)`.
    pub degree_cap: u32,
    /// Coefficients `n/d` with `|n|, d ≤ height_cap`.
    pub height_cap: u32,
    pub max_nodes: u64,
}

impl SearchLimits {
    pub fn new(depth: u32, degree_cap: u32, height_cap: u32) -> Self {
        SearchLimits { depth, degree_cap, height_cap, max_nodes: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub steps: Vec<Endo>,
    pub witness: Poly,
    pub target: Builtin,
    pub symmetry: SymmetryType,
    pub nodes: u64,
}

/// Iterative deepening over the move basis, simplest moves first, so the
/// first hit is a shortest sequence.
pub fn symmetrize_search(a: &Poly, limits: SearchLimits) -> Result<SearchResult, EngineError> {
    let moves = move_basis(limits.degree_cap, limits.height_cap);
    let mut nodes = 0u64;
    for depth in 0..=limits.depth {
        let mut path = Vec::new();
        if let Some((witness, target, symmetry)) = dfs(a, depth, &moves, &mut path, &mut nodes, limits.max_nodes)? {
            return Ok(SearchResult { steps: path, witness, target, symmetry, nodes });
        }
    }
    Err(EngineError::NotFound)
}

fn goal(w: &Poly) -> Option<(Builtin, SymmetryType)> {
    Builtin::CLASS_MINUS_ONE.into_iter().find_map(|b| match symmetry_type(w, &b.endo()) {
        SymmetryType::Neither => None,
        s => Some((b, s)),
    })
}

type Hit = (Poly, Builtin, SymmetryType);

fn dfs(
    w: &Poly,
    remaining: u32,
    moves: &[Endo],
    path: &mut Vec<Endo>,
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<Option<Hit>, EngineError> {
    *nodes += 1;
    if *nodes > max_nodes {
        return Err(EngineError::ResourceLimit(max_nodes));
    }
    if remaining == 0 {
        return Ok(goal(w).map(|(b, s)| (w.clone(), b, s)));
    }
    for g in moves {
        path.push(g.clone());
        if let Some(hit) = dfs(&g.apply(w), remaining - 1, moves, path, nodes, max_nodes)? {
            return Ok(Some(hit));
        }
        path.pop();
    }
    Ok(None)
}

/// Nonzero rationals of height at most `h`, small ones first.
fn heights(h: u32) -> Vec<FieldElement> {
    let mut seen: Vec<BigRational> = Vec::new();
    for bound in 1..=h as i64 {
        for d in 1..=bound {
            for n in 1..=bound {
                if n.max(d) != bound {
                    continue;
                }
                let r = BigRational::new(BigInt::from(n), BigInt::from(d));
                if !seen.contains(&r) {
                    seen.push(r.clone());
                    seen.push(-r);
                }
            }
        }
    }
    seen.into_iter().map(FieldElement::from_rational).collect()
}

/// Elementary moves in both directions, linear maps with entries in the
/// height set, and translations; sorted by number of changed terms.
fn move_basis(degree_cap: u32, height_cap: u32) -> Vec<Endo> {
    let vals = heights(height_cap);
    let with_zero: Vec<FieldElement> = std::iter::once(FieldElement::zero()).chain(vals.iter().cloned()).collect();
    let mut moves = Vec::new();

    // every h(t) = Σ_{1 ≤ k ≤ cap} c_k t^k with some c_k ≠ 0
    let cap = degree_cap as usize;
    let mut idx = vec![0usize; cap];
    loop {
        if idx.iter().any(|&i| i != 0) {
            let h = UniPoly::new(std::iter::once(FieldElement::zero()).chain(idx.iter().map(|&i| with_zero[i].clone())).collect());
            moves.push(Endo::new(&Poly::x() + &h.in_y(), Poly::y()));
            moves.push(Endo::new(Poly::x(), &Poly::y() + &h.in_x()));
        }
        let mut k = 0;
        while k < cap {
            idx[k] += 1;
            if idx[k] < with_zero.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == cap {
            break;
        }
    }

    for m00 in &with_zero {
        for m01 in &with_zero {
            for m10 in &with_zero {
                for m11 in &with_zero {
                    if (&(m00 * m11) - &(m01 * m10)).is_zero() {
                        continue;
                    }
                    let g = Endo::new(
                        &Poly::x().scale(m00) + &Poly::y().scale(m01),
                        &Poly::x().scale(m10) + &Poly::y().scale(m11),
                    );
                    if !g.is_identity() {
                        moves.push(g);
                    }
                }
            }
        }
    }
    for c in &vals {
        let shift = Poly::constant(c.clone());
        moves.push(Endo::new(&Poly::x() + &shift, Poly::y()));
        moves.push(Endo::new(Poly::x(), &Poly::y() + &shift));
    }

    let weight = |g: &Endo| {
        let changed = (&g.p - &Poly::x()).len() + (&g.q - &Poly::y()).len();
        let height: usize = g
            .p
            .terms()
            .chain(g.q.terms())
            .filter_map(|(_, c)| c.as_rational().map(|r| r.numer().magnitude().bits() + r.denom().bits()))
            .map(|b| b as usize)
            .sum();
        (changed, g.degree(), height)
    };
    moves.sort_by_cached_key(weight);
    moves
}
