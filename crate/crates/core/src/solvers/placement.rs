use rand::Rng;

use crate::cnf::Var;

/// A map `σ: V → [0,1]` over the declared range `x1..xn`. Variables are
/// processed by ascending value, ties broken by index.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    values: Vec<f64>,
}

impl Placement {
    /// Panics unless every value lies in `[0,1]`.
    pub fn new(values: Vec<f64>) -> Placement {
        assert!(
            values.iter().all(|v| (0.0..=1.0).contains(v)),
            "placement values must lie in [0,1]"
        );
        Placement { values }
    }

    /// Independent uniform values.
    pub fn uniform<R: Rng + ?Sized>(num_vars: u32, rng: &mut R) -> Placement {
        Placement {
            values: (0..num_vars).map(|_| rng.random::<f64>()).collect(),
        }
    }

    /// The placement that processes `order` first to last; variables missing
    /// from `order` come after it, by index.
    pub fn from_order(num_vars: u32, order: &[Var]) -> Placement {
        let mut values = vec![1.0; num_vars as usize];
        let denom = (order.len() + 1) as f64;
        for (rank, v) in order.iter().enumerate() {
            values[v.slot()] = (rank + 1) as f64 / denom;
        }
        Placement { values }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: Var) -> f64 {
        self.values[var.slot()]
    }

    /// All declared variables in processing order.
    pub fn order(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = (1..=self.num_vars()).map(Var::new).collect();
        vars.sort_by(|a, b| self.value(*a).total_cmp(&self.value(*b)).then(a.cmp(b)));
        vars
    }
}
