use crate::error::{Error, Result};
use crate::reduction::{CnfFormula, TruthAssignment};

pub const DEFAULT_SAT_LIMIT: usize = 20;

/// The first satisfying assignment in the order of
/// [`TruthAssignment::all`] (⊤ before ⊥), by trying every assignment.
/// Refuses formulas with more than `max_vars` variables.
pub fn sat_brute_force(formula: &CnfFormula, max_vars: usize) -> Result<Option<TruthAssignment>> {
    let n = formula.num_vars();
    if n > max_vars || n >= 64 {
        return Err(Error::CapExceeded {
            required: 1u128 << n.min(127),
            cap: 1u128 << max_vars.min(127),
        });
    }
    Ok(TruthAssignment::all(n).find(|x| formula.satisfied_by(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::from_literals(n, clauses).unwrap()
    }

    #[test]
    fn small_formulas() {
        let x = sat_brute_force(&cnf(1, &[&[1]]), 20).unwrap().unwrap();
        assert_eq!(x.bits(), &[true]);
        assert_eq!(sat_brute_force(&cnf(1, &[&[1], &[-1]]), 20).unwrap(), None);
        let x = sat_brute_force(&cnf(2, &[&[1, 2], &[-1, -2]]), 20).unwrap().unwrap();
        assert_eq!(x.bits(), &[true, false]);
        assert!(sat_brute_force(&cnf(3, &[&[1]]), 2).is_err());
    }

    #[test]
    fn agrees_with_direct_evaluation() {
        // all formulas over two variables with up to two clauses
        let shapes: Vec<Vec<i32>> = vec![
            vec![1], vec![-1], vec![2], vec![-2],
            vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2],
        ];
        for a in &shapes {
            for b in &shapes {
                let f = CnfFormula::from_literals(2, &[a, b]).unwrap();
                let any = TruthAssignment::all(2).any(|x| {
                    [a, b].iter().all(|c| c.iter().any(|&l| x.value(l.unsigned_abs() as usize) == (l > 0)))
                });
                let found = sat_brute_force(&f, 20).unwrap();
                assert_eq!(found.is_some(), any);
                if let Some(x) = found {
                    assert!(f.satisfied_by(&x));
                }
            }
        }
    }
}
