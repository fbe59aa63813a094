use super::{BinOp, Expr, Func, Var};
use crate::error::{Error, Result};
use crate::jet::Jet;

/// Number types an expression can be evaluated over.
pub trait Scalar: Copy + Sized {
    fn from_f64(x: f64) -> Self;
    fn value(&self) -> f64;
    fn neg(self) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn div(self, o: Self) -> Result<Self>;
    fn pow(self, o: Self) -> Result<Self>;
    fn call(self, f: Func) -> Result<Self>;
}

fn check(x: f64, op: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{op} produced a non-finite value")))
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn neg(self) -> Self {
        -self
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn div(self, o: Self) -> Result<Self> {
        if o == 0.0 {
            return Err(Error::Domain("division by zero".into()));
        }
        check(self / o, "division")
    }
    fn pow(self, o: Self) -> Result<Self> {
        if self < 0.0 && o.fract() != 0.0 {
            return Err(Error::Domain(format!("pow of negative base {self} with exponent {o}")));
        }
        check(self.powf(o), "pow")
    }
    fn call(self, f: Func) -> Result<Self> {
        let x = self;
        let y = match f {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Log => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!("log of {x}")));
                }
                x.ln()
            }
            Func::Sqrt => {
                if x < 0.0 {
                    return Err(Error::Domain(format!("sqrt of {x}")));
                }
                x.sqrt()
            }
            Func::Abs => x.abs(),
        };
        check(y, f.name())
    }
}

impl Scalar for Jet {
    fn from_f64(x: f64) -> Self {
        Jet::constant(x)
    }
    fn value(&self) -> f64 {
        Jet::value(self)
    }
    fn neg(self) -> Self {
        -self
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn div(self, o: Self) -> Result<Self> {
        Jet::div(&self, &o)?.finite("division")
    }
    fn pow(self, o: Self) -> Result<Self> {
        if o.is_constant() {
            return self.powf(o.value());
        }
        // variable exponent: a^b = exp(b ln a)
        let l = self.ln()?;
        (o * l).exp().finite("pow")
    }
    fn call(self, f: Func) -> Result<Self> {
        let y = match f {
            Func::Sin => self.sin_cos().0,
            Func::Cos => self.sin_cos().1,
            Func::Tan => {
                let (s, c) = self.sin_cos();
                Jet::div(&s, &c)?
            }
            Func::Sinh => self.sinh_cosh().0,
            Func::Cosh => self.sinh_cosh().1,
            Func::Tanh => {
                let (s, c) = self.sinh_cosh();
                Jet::div(&s, &c)?
            }
            Func::Exp => self.exp(),
            Func::Log => self.ln()?,
            Func::Sqrt => self.sqrt()?,
            Func::Abs => {
                let x = self.value();
                if x > 0.0 {
                    self
                } else if x < 0.0 {
                    -self
                } else if self.is_constant() {
                    self
                } else {
                    return Err(Error::Domain("abs is not differentiable at 0".into()));
                }
            }
        };
        y.finite(f.name())
    }
}

/// Variable bindings.
#[derive(Debug, Clone, Copy)]
pub struct Env<T> {
    slots: [Option<T>; 4],
}

impl<T: Copy> Default for Env<T> {
    fn default() -> Self {
        Env { slots: [None; 4] }
    }
}

impl<T: Copy> Env<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, x: T) -> Self {
        self.slots[var.index()] = Some(x);
        self
    }

    pub fn get(&self, var: Var) -> Option<T> {
        self.slots[var.index()]
    }
}

impl Expr {
    /// Evaluates over any [`Scalar`]; domain violations are errors, never NaN.
    pub fn eval<T: Scalar>(&self, env: &Env<T>) -> Result<T> {
        match self {
            Expr::Num(x) => Ok(T::from_f64(*x)),
            Expr::Var(v) => env.get(*v).ok_or(Error::UnboundVariable(*v)),
            Expr::Neg(a) => Ok(a.eval(env)?.neg()),
            Expr::Call(f, a) => a.eval(env)?.call(*f),
            Expr::Bin(op, a, b) => {
                let x = a.eval(env)?;
                let y = b.eval(env)?;
                match op {
                    BinOp::Add => Ok(x.add(y)),
                    BinOp::Sub => Ok(x.sub(y)),
                    BinOp::Mul => Ok(x.mul(y)),
                    BinOp::Div => x.div(y),
                    BinOp::Pow => x.pow(y),
                }
            }
        }
    }
}
