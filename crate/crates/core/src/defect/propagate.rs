use super::magnitude::Magnitude;
use super::vector::DefectVector;
use crate::eca::{step, Boundary, Configuration, Neighbour, RuleTable, CENTER, LEFT, RIGHT};
use crate::error::{Error, Result};

/// Pushes defect counts one step forward along the reference trajectory:
/// `eps'[j] = sum over neighbours i of j of D[j][i] * eps[i]`, where `D` is
/// the Boolean Jacobian of the rule evaluated at `reference`.
pub fn propagate_step<M: Magnitude>(
    rule: &RuleTable,
    reference: &Configuration,
    defects: &DefectVector<M>,
) -> Result<DefectVector<M>> {
    let width = reference.width();
    if defects.width() != width {
        return Err(Error::WidthMismatch {
            config: width,
            defects: defects.width(),
        });
    }
    let time = defects.time() + 1;
    let Some((lo, hi)) = defects.support() else {
        return Ok(DefectVector::from_counts(vec![M::zero(); width], time));
    };
    let (from, to) = if reference.boundary() == Boundary::Periodic {
        (0, width - 1)
    } else {
        (lo.saturating_sub(1), (hi + 1).min(width - 1))
    };

    let counts = defects.counts();
    let mut next = vec![M::zero(); width];
    let mut terms: Vec<&M> = Vec::with_capacity(3);
    for (j, slot) in next.iter_mut().enumerate().take(to + 1).skip(from) {
        let mask = rule.sensitivity(reference.pattern(j));
        if mask == 0 {
            continue;
        }
        terms.clear();
        let sources = [
            (LEFT, reference.left_of(j)),
            (CENTER, Neighbour::Cell(j)),
            (RIGHT, reference.right_of(j)),
        ];
        for (bit, source) in sources {
            if mask & bit == 0 {
                continue;
            }
            if let Neighbour::Cell(i) = source {
                if !counts[i].is_zero() {
                    terms.push(&counts[i]);
                }
            }
        }
        if !terms.is_empty() {
            *slot = M::sum(terms.iter().copied());
        }
    }
    Ok(DefectVector::from_counts(next, time))
}

/// Evolves the reference configuration and the defect vector in lockstep
/// for `steps` steps. `observer` sees `(t, reference_t, eps_t)` after each step.
pub fn propagate_trajectory<M, F>(
    rule: &RuleTable,
    initial: &Configuration,
    defects0: DefectVector<M>,
    steps: u64,
    mut observer: F,
) -> Result<DefectVector<M>>
where
    M: Magnitude,
    F: FnMut(u64, &Configuration, &DefectVector<M>),
{
    if defects0.width() != initial.width() {
        return Err(Error::WidthMismatch {
            config: initial.width(),
            defects: defects0.width(),
        });
    }
    let mut reference = initial.clone();
    let mut defects = defects0;
    for t in 1..=steps {
        defects = propagate_step(rule, &reference, &defects)?;
        reference = step(rule, &reference);
        observer(t, &reference, &defects);
    }
    Ok(defects)
}
