use std::sync::Arc;

use super::{BinOp, Expr, Func, Var};

fn num(x: f64) -> Expr {
    Expr::Num(x)
}

fn is(e: &Expr, x: f64) -> bool {
    e.as_num() == Some(x)
}

fn folded(x: f64, fallback: impl FnOnce() -> Expr) -> Expr {
    if x.is_finite() {
        num(x)
    } else {
        fallback()
    }
}

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) => num(-x),
        Expr::Neg(inner) => (*inner).clone(),
        a => Expr::Neg(Arc::new(a)),
    }
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    if is(&a, 0.0) {
        return b;
    }
    if is(&b, 0.0) {
        return a;
    }
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x + y);
    }
    if let Expr::Neg(nb) = &b {
        return Expr::Bin(BinOp::Sub, Arc::new(a), nb.clone());
    }
    Expr::Bin(BinOp::Add, Arc::new(a), Arc::new(b))
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    if is(&b, 0.0) {
        return a;
    }
    if is(&a, 0.0) {
        return neg(b);
    }
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x - y);
    }
    if let Expr::Neg(nb) = &b {
        return Expr::Bin(BinOp::Add, Arc::new(a), nb.clone());
    }
    Expr::Bin(BinOp::Sub, Arc::new(a), Arc::new(b))
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    if is(&a, 0.0) || is(&b, 0.0) {
        return num(0.0);
    }
    if is(&a, 1.0) {
        return b;
    }
    if is(&b, 1.0) {
        return a;
    }
    if is(&a, -1.0) {
        return neg(b);
    }
    if is(&b, -1.0) {
        return neg(a);
    }
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        return num(x * y);
    }
    Expr::Bin(BinOp::Mul, Arc::new(a), Arc::new(b))
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if is(&b, 1.0) {
        return a;
    }
    if is(&a, 0.0) && !is(&b, 0.0) {
        return num(0.0);
    }
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        if y != 0.0 {
            return folded(x / y, || Expr::Bin(BinOp::Div, Arc::new(num(x)), Arc::new(num(y))));
        }
    }
    Expr::Bin(BinOp::Div, Arc::new(a), Arc::new(b))
}

pub(crate) fn pow(a: Expr, b: Expr) -> Expr {
    if is(&b, 1.0) {
        return a;
    }
    if is(&b, 0.0) {
        return num(1.0);
    }
    Expr::Bin(BinOp::Pow, Arc::new(a), Arc::new(b))
}

pub(crate) fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Arc::new(a))
}

impl Expr {
    /// Symbolic partial derivative with constant folding.
    pub fn diff(&self, var: Var) -> Expr {
        if !self.depends_on(var) {
            return num(0.0);
        }
        match self {
            Expr::Num(_) => num(0.0),
            Expr::Var(v) => num(if *v == var { 1.0 } else { 0.0 }),
            Expr::Neg(a) => neg(a.diff(var)),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                let (da, db) = (a.diff(var), b.diff(var));
                match op {
                    BinOp::Add => add(da, db),
                    BinOp::Sub => sub(da, db),
                    BinOp::Mul => add(mul(da, b.clone()), mul(a, db)),
                    BinOp::Div => div(sub(mul(da, b.clone()), mul(a, db)), pow(b, num(2.0))),
                    BinOp::Pow => {
                        if !b.depends_on(var) {
                            // d(a^p) = p a^(p-1) a'
                            let pm1 = match b.as_num() {
                                Some(p) => num(p - 1.0),
                                None => sub(b.clone(), num(1.0)),
                            };
                            mul(mul(b, pow(a, pm1)), da)
                        } else {
                            // d(a^b) = a^b (b' ln a + b a'/a)
                            let ab = Expr::Bin(BinOp::Pow, Arc::new(a.clone()), Arc::new(b.clone()));
                            let inner = add(
                                mul(db, call(Func::Log, a.clone())),
                                div(mul(b, da), a),
                            );
                            mul(ab, inner)
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let a = a.as_ref().clone();
                let da = a.diff(var);
                let outer = match f {
                    Func::Sin => call(Func::Cos, a),
                    Func::Cos => neg(call(Func::Sin, a)),
                    Func::Tan => div(num(1.0), pow(call(Func::Cos, a), num(2.0))),
                    Func::Sinh => call(Func::Cosh, a),
                    Func::Cosh => call(Func::Sinh, a),
                    Func::Tanh => div(num(1.0), pow(call(Func::Cosh, a), num(2.0))),
                    Func::Exp => call(Func::Exp, a),
                    Func::Log => div(num(1.0), a),
                    Func::Sqrt => div(num(0.5), call(Func::Sqrt, a)),
                    // sign(a), undefined at 0 where evaluation of a/|a| fails
                    Func::Abs => div(a.clone(), call(Func::Abs, a)),
                };
                mul(outer, da)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use proptest::prelude::*;

    fn fd(e: &Expr, u: f64, v: f64, var: Var) -> f64 {
        let h = 1e-5;
        let at = |du: f64, dv: f64| e.eval_at(&[(Var::U, u + du), (Var::V, v + dv)]).unwrap();
        match var {
            Var::U => (at(h, 0.0) - at(-h, 0.0)) / (2.0 * h),
            _ => (at(0.0, h) - at(0.0, -h)) / (2.0 * h),
        }
    }

    #[test]
    fn folds_trivial_terms() {
        assert_eq!(parse("u*v").unwrap().diff(Var::U).to_string(), "v");
        assert_eq!(parse("3*u+2").unwrap().diff(Var::U).to_string(), "3");
        assert_eq!(parse("cos(v)").unwrap().diff(Var::U), Expr::Num(0.0));
        assert_eq!(parse("u^3").unwrap().diff(Var::U).to_string(), "3*u^2");
    }

    #[test]
    fn fixture_partials() {
        let e = parse("cosh(u)*cos(v)").unwrap();
        let d = e.diff(Var::U);
        let want = 0.3f64.sinh() * 0.2f64.cos();
        assert!((d.eval_at(&[(Var::U, 0.3), (Var::V, 0.2)]).unwrap() - want).abs() < 1e-15);
    }

    fn src() -> impl Strategy<Value = &'static str> {
        prop::sample::select(vec![
            "cosh(u)*cos(v)",
            "sinh(u)*sin(v)/(1+u^2)",
            "u*v*exp(u-v)",
            "sqrt(2+sin(u*v))",
            "log(3+cos(u))*tanh(v)",
            "(1+u^2)^(v/2+1)",
            "tan(u/3)-abs(v-5)",
            "-(u^3)/(2+cosh(v))",
        ])
    }

    proptest! {
        #[test]
        fn derivative_matches_central_difference(
            s in src(), u in -1.0..1.0f64, v in -1.0..1.0f64
        ) {
            let e = parse(s).unwrap();
            for var in [Var::U, Var::V] {
                let exact = e.diff(var).eval_at(&[(Var::U, u), (Var::V, v)]).unwrap();
                let approx = fd(&e, u, v, var);
                prop_assert!((exact - approx).abs() < 1e-6 * (1.0 + exact.abs()), "{} d{}", s, var);
            }
        }
    }
}
