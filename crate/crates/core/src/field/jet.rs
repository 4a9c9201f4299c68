use super::Field;

/// A first-order jet: a value together with its partial derivatives with
/// respect to a fixed number of active variables. Arithmetic on jets is
/// forward-mode differentiation with exact scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet<E> {
    pub value: E,
    pub partials: Vec<E>,
}

/// Arithmetic on [`Jet`]s over a field, for a fixed number of variables.
#[derive(Debug, Clone, Copy)]
pub struct JetArith<'a, F: Field> {
    field: &'a F,
    nvars: usize,
}

impl<'a, F: Field> JetArith<'a, F> {
    pub fn new(field: &'a F, nvars: usize) -> Self {
        JetArith { field, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant(&self, value: F::Elem) -> Jet<F::Elem> {
        Jet {
            value,
            partials: vec![self.field.zero(); self.nvars],
        }
    }

    /// The `index`-th coordinate function, evaluated at `value`.
    pub fn variable(&self, index: usize, value: F::Elem) -> Jet<F::Elem> {
        assert!(index < self.nvars, "variable {index} out of range");
        let mut j = self.constant(value);
        j.partials[index] = self.field.one();
        j
    }

    pub fn add(&self, a: &Jet<F::Elem>, b: &Jet<F::Elem>) -> Jet<F::Elem> {
        let f = self.field;
        Jet {
            value: f.add(&a.value, &b.value),
            partials: zip_with(&a.partials, &b.partials, |x, y| f.add(x, y)),
        }
    }

    pub fn sub(&self, a: &Jet<F::Elem>, b: &Jet<F::Elem>) -> Jet<F::Elem> {
        let f = self.field;
        Jet {
            value: f.sub(&a.value, &b.value),
            partials: zip_with(&a.partials, &b.partials, |x, y| f.sub(x, y)),
        }
    }

    pub fn neg(&self, a: &Jet<F::Elem>) -> Jet<F::Elem> {
        let f = self.field;
        Jet {
            value: f.neg(&a.value),
            partials: a.partials.iter().map(|x| f.neg(x)).collect(),
        }
    }

    /// Product rule: `(ab)' = a·b' + b·a'`.
    pub fn mul(&self, a: &Jet<F::Elem>, b: &Jet<F::Elem>) -> Jet<F::Elem> {
        let f = self.field;
        Jet {
            value: f.mul(&a.value, &b.value),
            partials: zip_with(&a.partials, &b.partials, |da, db| {
                f.add(&f.mul(&a.value, db), &f.mul(&b.value, da))
            }),
        }
    }

    pub fn scale(&self, c: &F::Elem, a: &Jet<F::Elem>) -> Jet<F::Elem> {
        let f = self.field;
        Jet {
            value: f.mul(c, &a.value),
            partials: a.partials.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    /// `(1/a)' = -a'/a²`; `None` when the value is zero.
    pub fn inv(&self, a: &Jet<F::Elem>) -> Option<Jet<F::Elem>> {
        let f = self.field;
        let vi = f.inv(&a.value)?;
        let factor = f.neg(&f.mul(&vi, &vi));
        Some(Jet {
            value: vi,
            partials: a.partials.iter().map(|x| f.mul(&factor, x)).collect(),
        })
    }

    pub fn div(&self, a: &Jet<F::Elem>, b: &Jet<F::Elem>) -> Option<Jet<F::Elem>> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Jet<F::Elem>, exp: u32) -> Jet<F::Elem> {
        let mut acc = self.constant(self.field.one());
        for _ in 0..exp {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

fn zip_with<E, G: Fn(&E, &E) -> E>(a: &[E], b: &[E], g: G) -> Vec<E> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| g(x, y)).collect()
}
