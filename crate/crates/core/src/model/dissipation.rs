// SPDX-License-Identifier: Apache-2.0

//! Spontaneous emission from the Rydberg level.

use crate::model::params::SimulationParams;
use crate::model::states::{product_index, Level};
use crate::numerics::{real, Basis, CMatrix, Operator};

/// A jump operator L with rate γ, entering as γ (L ρ L† - ½{L†L, ρ}).
#[derive(Clone, Debug)]
pub struct CollapseOperator {
    pub operator: Operator,
    pub rate: f64,
    pub label: String,
}

/// |p>_q <e| lowering operator for ground level `p` on atom `q` (0-based).
pub fn lowering(p: Level, q: usize) -> Operator {
    assert!(q < 3 && p != Level::E);
    let mut m = CMatrix::zeros(27, 27);
    for (a, b, c) in itertools::iproduct!(Level::ALL, Level::ALL, Level::ALL) {
        let from = [a, b, c];
        if from[q] == Level::E {
            let mut to = from;
            to[q] = p;
            m[(product_index(to), product_index(from))] = real(1.0);
        }
    }
    Operator::new(Basis::Full27, m).expect("27x27")
}

/// The six channels e -> g0, g1 on each atom, each at rate γ_e / 2, so an
/// isolated excited atom decays at total rate γ_e.
pub fn collapse_operators(params: &SimulationParams) -> Vec<CollapseOperator> {
    let rate = params.emission_rate() / 2.0;
    let mut ops = Vec::with_capacity(6);
    for q in 0..3 {
        for p in [Level::G0, Level::G1] {
            ops.push(CollapseOperator {
                operator: lowering(p, q),
                rate,
                label: format!("{p:?}<-e atom {}", q + 1),
            });
        }
    }
    ops
}
