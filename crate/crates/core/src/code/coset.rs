use super::{CodeError, StabilizerCode};
use crate::gf2::PauliOperator;

/// Largest code length whose encoded-Z coset (2^(n−1) elements) is enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

/// Walks `rep · M` over all `M` in the group generated by `generators`, in
/// Gray-code order so that consecutive elements differ by one generator.
#[derive(Clone, Debug)]
pub struct GroupWalk {
    current: PauliOperator,
    generators: Vec<PauliOperator>,
    step: u64,
    total: u64,
}

impl GroupWalk {
    pub fn new(rep: PauliOperator, generators: &[PauliOperator]) -> Self {
        assert!(generators.len() < 64, "group too large to enumerate");
        Self {
            current: rep,
            generators: generators.to_vec(),
            step: 0,
            total: 1u64 << generators.len(),
        }
    }
}

impl Iterator for GroupWalk {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.step == self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.mul_assign(&self.generators[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GroupWalk {}

/// Stream of every encoded Z operator `Z̄·M`, `M` in the stabilizer.
pub type CosetIter = GroupWalk;

/// All `2^(n−k)` encoded Z operators of a `k = 1` code, each exactly once.
pub fn logical_z_coset(code: &StabilizerCode) -> Result<CosetIter, CodeError> {
    logical_z_coset_with_cap(code, DEFAULT_ENUMERATION_CAP)
}

pub fn logical_z_coset_with_cap(
    code: &StabilizerCode,
    cap: usize,
) -> Result<CosetIter, CodeError> {
    if code.k() != 1 {
        return Err(CodeError::WrongLogicalCount {
            expected: 1,
            found: code.k(),
        });
    }
    if code.n() > cap {
        return Err(CodeError::CapExceeded { n: code.n(), cap });
    }
    let lz = code
        .logical_z()
        .ok_or_else(|| CodeError::InvalidLogical("no logical Z attached".into()))?;
    Ok(GroupWalk::new(lz.clone(), code.generators()))
}
