use clap::ValueEnum;
use dashu::rational::RBig;
use qcalc_core::qburgers::ShockSpec;
use qcalc_core::qcore::parse_rational;
use qcalc_core::qhermite::{hermite_explicit, kdf_explicit};
use qcalc_core::qschrodinger::schrodinger_superposition;
use qcalc_core::qspecial::{cosh_q, e_q, ln_q, sinh_q, tanh_q, QSeriesEval};
use qcalc_core::{Complex, QBase, Real, Scalar};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_table, fmt_complex, fmt_real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "e_q")]
    Eq,
    #[value(name = "sinh_q")]
    Sinh,
    #[value(name = "cosh_q")]
    Cosh,
    #[value(name = "tanh_q")]
    Tanh,
    #[value(name = "ln_q")]
    Ln,
    Hermite,
    Kdf,
    Shock,
    Psi,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::Eq => "e_q",
            Function::Sinh => "sinh_q",
            Function::Cosh => "cosh_q",
            Function::Tanh => "tanh_q",
            Function::Ln => "ln_q",
            Function::Hermite => "hermite",
            Function::Kdf => "kdf",
            Function::Shock => "shock",
            Function::Psi => "psi",
        }
    }

    /// Flags the function accepts, required ones first.
    fn arity(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Function::Eq | Function::Sinh | Function::Cosh | Function::Tanh | Function::Ln => (&["x"], &["im"]),
            Function::Hermite => (&["N", "x"], &[]),
            Function::Kdf => (&["N", "x", "t"], &[]),
            Function::Shock => (&["k", "x", "t"], &["offset"]),
            Function::Psi => (&["p", "x", "t"], &["amp"]),
        }
    }
}

/// Arguments of `qcalc eval`, as given on the command line.
#[derive(Clone, Debug, Default)]
pub struct EvalArgs {
    pub x: Option<String>,
    pub im: Option<String>,
    pub t: Option<String>,
    pub n: Option<usize>,
    pub k: Vec<String>,
    pub offset: Option<String>,
    pub p: Vec<String>,
    pub amp: Vec<String>,
}

impl EvalArgs {
    fn given(&self) -> Vec<&'static str> {
        let mut g = Vec::new();
        let flags: [(&'static str, bool); 8] = [
            ("x", self.x.is_some()),
            ("im", self.im.is_some()),
            ("t", self.t.is_some()),
            ("N", self.n.is_some()),
            ("k", !self.k.is_empty()),
            ("offset", self.offset.is_some()),
            ("p", !self.p.is_empty()),
            ("amp", !self.amp.is_empty()),
        ];
        for (name, present) in flags {
            if present {
                g.push(name);
            }
        }
        g
    }

    fn check(&self, f: Function) -> Result<(), CliError> {
        let (required, optional) = f.arity();
        let given = self.given();
        if let Some(missing) = required.iter().find(|r| !given.contains(r)) {
            return Err(CliError::Usage(format!("{} needs --{missing}", f.name())));
        }
        if let Some(extra) = given.iter().find(|g| !required.contains(g) && !optional.contains(g)) {
            return Err(CliError::Usage(format!("{} does not take --{extra}", f.name())));
        }
        Ok(())
    }
}

fn number(name: &str, text: &str) -> Result<RBig, CliError> {
    parse_rational(text).map_err(|_| CliError::Usage(format!("--{name}: cannot parse '{text}' as a number")))
}

fn list(name: &str, items: &[String]) -> Result<Vec<RBig>, CliError> {
    items.iter().map(|s| number(name, s)).collect()
}

/// Result of one evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct EvalOutput {
    pub function: String,
    pub value: String,
    pub re: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
    /// Exact rational value, for polynomials at rational points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub terms_used: usize,
    pub cancellation_digits: u32,
    pub precision_bits: usize,
}

impl EvalOutput {
    fn real(f: Function, v: &Real, terms_used: usize, cancellation_digits: u32, prec: usize) -> Self {
        let s = fmt_real(v, prec);
        EvalOutput {
            function: f.name().into(),
            value: s.clone(),
            re: s,
            im: None,
            exact: None,
            terms_used,
            cancellation_digits,
            precision_bits: prec,
        }
    }

    fn complex(f: Function, v: &Complex, terms_used: usize, cancellation_digits: u32, prec: usize) -> Self {
        EvalOutput {
            function: f.name().into(),
            value: fmt_complex(v, prec),
            re: fmt_real(&v.re, prec),
            im: Some(fmt_real(&v.im, prec)),
            exact: None,
            terms_used,
            cancellation_digits,
            precision_bits: prec,
        }
    }

    fn exact(f: Function, v: &RBig, terms_used: usize, prec: usize) -> Self {
        let mut out = Self::real(f, &Real::from_rational(v, prec), terms_used, 0, prec);
        out.value = v.to_string();
        out.exact = Some(v.to_string());
        out
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => csv_table(
                &["function", "value", "terms_used", "cancellation_digits", "precision_bits"],
                &[vec![
                    self.function.clone(),
                    self.value.clone(),
                    self.terms_used.to_string(),
                    self.cancellation_digits.to_string(),
                    self.precision_bits.to_string(),
                ]],
            ),
        }
    }
}

fn merge<S>(metas: &[QSeriesEval<S>]) -> (usize, u32) {
    (
        metas.iter().map(|m| m.terms_used).max().unwrap_or(0),
        metas.iter().map(|m| m.cancellation_digits).max().unwrap_or(0),
    )
}

fn special<S: Scalar>(f: Function, x: &S, q: &QBase) -> Result<(S, usize, u32), CliError> {
    let (v, metas) = match f {
        Function::Eq => {
            let (v, m) = e_q(x, q)?;
            (v, vec![m])
        }
        Function::Ln => {
            let (v, m) = ln_q(x, q)?;
            (v, vec![m])
        }
        _ => {
            let v = match f {
                Function::Sinh => sinh_q(x, q)?,
                Function::Cosh => cosh_q(x, q)?,
                _ => tanh_q(x, q)?,
            };
            (v, vec![e_q(x, q)?.1, e_q(&-x.clone(), q)?.1])
        }
    };
    let (terms, cancel) = merge(&metas);
    Ok((v, terms, cancel))
}

pub fn cmd_eval(f: Function, args: &EvalArgs, config: &RunConfig) -> Result<EvalOutput, CliError> {
    args.check(f)?;
    let prec = config.precision_bits;
    let q = &config.q;
    let real = |name: &str, s: &Option<String>| -> Result<(RBig, Real), CliError> {
        let r = number(name, s.as_deref().expect("arity checked"))?;
        let v = Real::from_rational(&r, prec);
        Ok((r, v))
    };
    match f {
        Function::Eq | Function::Sinh | Function::Cosh | Function::Tanh | Function::Ln => {
            let (_, x) = real("x", &args.x)?;
            match &args.im {
                None => {
                    let (v, terms, cancel) = special(f, &x, q)?;
                    Ok(EvalOutput::real(f, &v, terms, cancel, prec))
                }
                Some(im) => {
                    let z = Complex::new(x, Real::from_rational(&number("im", im)?, prec));
                    let (v, terms, cancel) = special(f, &z, q)?;
                    Ok(EvalOutput::complex(f, &v, terms, cancel, prec))
                }
            }
        }
        Function::Hermite => {
            let n = args.n.expect("arity checked");
            let (x, _) = real("x", &args.x)?;
            let v = hermite_explicit(n, q)?.eval(&x);
            Ok(EvalOutput::exact(f, &v, n / 2 + 1, prec))
        }
        Function::Kdf => {
            let n = args.n.expect("arity checked");
            let (x, _) = real("x", &args.x)?;
            let (t, _) = real("t", &args.t)?;
            let v = kdf_explicit(n, q)?.eval_s(&(config.nu.clone() * t)).eval(&x);
            Ok(EvalOutput::exact(f, &v, n / 2 + 1, prec))
        }
        Function::Shock => {
            let (_, x) = real("x", &args.x)?;
            let (_, t) = real("t", &args.t)?;
            let offset = match &args.offset {
                Some(o) => Real::from_rational(&number("offset", o)?, prec),
                None => Real::zero(prec),
            };
            let ks: Vec<Real> = list("k", &args.k)?.iter().map(|k| Real::from_rational(k, prec)).collect();
            let spec = ShockSpec::new(offset, ks.iter().map(|k| (k.clone(), Real::one(prec))).collect(), q, config.nu_real())?;
            let v = spec.velocity()?.u(&x, &t)?;
            let metas = ks.iter().map(|k| e_q(&(k * &x), q).map(|(_, m)| m)).collect::<Result<Vec<_>, _>>()?;
            let (terms, cancel) = merge(&metas);
            Ok(EvalOutput::real(f, &v, terms, cancel, prec))
        }
        Function::Psi => {
            let params = config.quantum()?;
            let (_, x) = real("x", &args.x)?;
            let (_, t) = real("t", &args.t)?;
            let ps = list("p", &args.p)?;
            let amps = if args.amp.is_empty() { vec![RBig::ONE; ps.len()] } else { list("amp", &args.amp)? };
            if amps.len() != ps.len() {
                return Err(CliError::Usage(format!("--amp has {} entries, --p has {}", amps.len(), ps.len())));
            }
            let terms: Vec<(Complex, Real)> = amps
                .iter()
                .zip(&ps)
                .map(|(a, p)| (Complex::from_rational(a, prec), Real::from_rational(p, prec)))
                .collect();
            let v = schrodinger_superposition(&terms, &params)?.value(&x, &t)?;
            let metas = ps
                .iter()
                .map(|p| {
                    let k = Complex::imag(Real::from_rational(&(p.clone() / &params.hbar), prec));
                    e_q(&(k.scale(&x)), q).map(|(_, m)| m)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (terms, cancel) = merge(&metas);
            Ok(EvalOutput::complex(f, &v, terms, cancel, prec))
        }
    }
}
