//! Built-in algebras used throughout the tests and scenarios.

use std::sync::Arc;

use crate::lie::{AlgebraSpec, Bracket, StratifiedAlgebra};
use crate::scalar::int;

fn strings(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

/// First Heisenberg algebra: `[X1, X2] = T`.
pub fn heisenberg() -> Arc<StratifiedAlgebra> {
    Arc::new(
        StratifiedAlgebra::new(AlgebraSpec {
            name: "h1".into(),
            weights: vec![1, 1, 2],
            brackets: vec![Bracket { i: 0, j: 1, terms: vec![(2, int(1))] }],
            labels: strings(&["X1", "X2", "T"]),
            coframe: strings(&["θ1", "θ2", "τ"]),
            coordinates: strings(&["x1", "x2", "x3"]),
        })
        .expect("valid"),
    )
}

/// `h1 × R`: a central first-layer direction `X3` added to the Heisenberg algebra.
pub fn h1_x_r() -> Arc<StratifiedAlgebra> {
    Arc::new(
        StratifiedAlgebra::new(AlgebraSpec {
            name: "h1xR".into(),
            weights: vec![1, 1, 1, 2],
            brackets: vec![Bracket { i: 0, j: 1, terms: vec![(3, int(1))] }],
            labels: strings(&["X1", "X2", "X3", "T"]),
            coframe: strings(&["θ1", "θ2", "θ3", "τ"]),
            coordinates: strings(&["x1", "x2", "x3", "t"]),
        })
        .expect("valid"),
    )
}

/// Abelian `R^n`.
pub fn abelian(n: usize) -> Arc<StratifiedAlgebra> {
    Arc::new(
        StratifiedAlgebra::new(AlgebraSpec {
            name: format!("R{n}"),
            weights: vec![1; n],
            ..Default::default()
        })
        .expect("valid"),
    )
}

/// Five-dimensional algebra `[X1,X2]=T, [X1,T]=[X2,X3]=W`. It is graded with weights
/// `(1,1,2,2,3)` but admits no stratification.
pub fn nonstrat5() -> Arc<StratifiedAlgebra> {
    Arc::new(
        StratifiedAlgebra::new(AlgebraSpec {
            name: "nonstrat5".into(),
            weights: vec![1, 1, 2, 2, 3],
            brackets: vec![
                Bracket { i: 0, j: 1, terms: vec![(3, int(1))] },
                Bracket { i: 0, j: 3, terms: vec![(4, int(1))] },
                Bracket { i: 1, j: 2, terms: vec![(4, int(1))] },
            ],
            labels: strings(&["X1", "X2", "X3", "T", "W"]),
            coframe: strings(&["θ1", "θ2", "θ3", "τ", "σ"]),
            coordinates: strings(&["x1", "x2", "x3", "t", "w"]),
        })
        .expect("valid"),
    )
}

/// Engel algebra: `[X1,X2]=X3, [X1,X3]=X4`, step 3.
pub fn engel() -> Arc<StratifiedAlgebra> {
    Arc::new(
        StratifiedAlgebra::new(AlgebraSpec {
            name: "engel".into(),
            weights: vec![1, 1, 2, 3],
            brackets: vec![
                Bracket { i: 0, j: 1, terms: vec![(2, int(1))] },
                Bracket { i: 0, j: 2, terms: vec![(3, int(1))] },
            ],
            ..Default::default()
        })
        .expect("valid"),
    )
}
