//! Fixed single- and two-qubit gates.

use core::f64::consts::FRAC_1_SQRT_2;

use super::matrix::Matrix;
use super::operator::UnitaryOperator;
use super::C64;

const O: C64 = C64::new(0.0, 0.0);
const L: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity2() -> UnitaryOperator {
    UnitaryOperator::identity(2)
}

/// Bit flip.
pub fn pauli_x() -> UnitaryOperator {
    UnitaryOperator::trusted(Matrix::from_rows([[O, L], [L, O]]))
}

pub fn pauli_y() -> UnitaryOperator {
    UnitaryOperator::trusted(Matrix::from_rows([[O, -I], [I, O]]))
}

pub fn pauli_z() -> UnitaryOperator {
    UnitaryOperator::trusted(Matrix::from_rows([[L, O], [O, -L]]))
}

pub fn hadamard() -> UnitaryOperator {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    UnitaryOperator::trusted(Matrix::from_rows([[h, h], [h, -h]]))
}

/// `diag(i, −i)`, the "Q" strategy of the quantized Prisoner's Dilemma.
pub fn q_type() -> UnitaryOperator {
    UnitaryOperator::trusted(Matrix::from_rows([[I, O], [O, -I]]))
}

/// Controlled-NOT with the first qubit as control.
pub fn cnot() -> UnitaryOperator {
    UnitaryOperator::trusted(Matrix::from_rows([
        [L, O, O, O],
        [O, L, O, O],
        [O, O, O, L],
        [O, O, L, O],
    ]))
}

/// Looks up a single-qubit gate by its conventional name (`I X Y Z H Q`).
pub fn by_name(name: &str) -> Option<UnitaryOperator> {
    Some(match name {
        "I" => identity2(),
        "X" => pauli_x(),
        "Y" => pauli_y(),
        "Z" => pauli_z(),
        "H" => hadamard(),
        "Q" => q_type(),
        _ => return None,
    })
}
