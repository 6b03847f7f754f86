//! Arithmetic functions `f: N -> R` as evaluable, streamable sequences.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use crate::arith::sieve::{Sieve, SieveConfig};
use crate::error::{Error, Result};
use crate::trace::format_float;
use crate::Scalar;

/// Functions the block sieve produces directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveFunction {
    Mobius,
    Liouville,
    /// μ(k)/k
    MobiusOverK,
}

type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// An explicit formula in `k`, optionally with a closed-form antiderivative.
#[derive(Clone)]
pub struct ClosedForm<T> {
    label: String,
    f: RealFn<T>,
    antiderivative: Option<RealFn<T>>,
    magnitude_bound: T,
}

impl<T> fmt::Debug for ClosedForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedForm")
            .field("label", &self.label)
            .field("antiderivative", &self.antiderivative.is_some())
            .finish()
    }
}

impl<T: Scalar> ClosedForm<T> {
    /// `magnitude_bound` is the declared `B` with `|f(k)| <= B`.
    pub fn new(
        label: impl Into<String>,
        magnitude_bound: T,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
            antiderivative: None,
            magnitude_bound,
        }
    }

    pub fn with_antiderivative(mut self, g: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.antiderivative = Some(Arc::new(g));
        self
    }

    pub fn constant(c: T) -> Self {
        Self::new(format!("const({c})"), c.abs(), move |_| c).with_antiderivative(move |t| c * t)
    }

    /// `1/k`
    pub fn reciprocal() -> Self {
        Self::new("1/k", T::one(), |t| t.recip()).with_antiderivative(|t| t.ln())
    }

    /// `1/k²`
    pub fn inverse_square() -> Self {
        Self::new("1/k^2", T::one(), |t| (t * t).recip()).with_antiderivative(|t| -t.recip())
    }

    /// `(-1)^k`
    pub fn alternating() -> Self {
        Self::new("(-1)^k", T::one(), |t| {
            if (t / T::lit(2.0)).fract() == T::zero() {
                T::one()
            } else {
                -T::one()
            }
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn magnitude_bound(&self) -> T {
        self.magnitude_bound
    }

    /// Evaluates at a real argument.
    pub fn eval(&self, t: T) -> T {
        (self.f)(t)
    }

    pub fn at(&self, k: u64) -> T {
        self.eval(T::from_count(k))
    }

    /// `∫_a^b f` from the antiderivative, if one was supplied.
    pub fn exact_integral(&self, a: T, b: T) -> Option<T> {
        self.antiderivative.as_ref().map(|g| g(b) - g(a))
    }
}

/// Borrowed run of consecutive values starting at some index.
pub enum Chunk<'a, T> {
    Integer(&'a [i8]),
    Real(&'a [T]),
}

#[derive(Debug, Clone)]
enum Source<T> {
    Sieve {
        function: SieveFunction,
        engine: Arc<Sieve>,
    },
    ClosedForm(ClosedForm<T>),
    Synthesized(Arc<[T]>),
}

const CLOSED_FORM_CHUNK: u64 = 1 << 16;

/// A bounded real-valued arithmetic function with a largest evaluable index.
#[derive(Debug, Clone)]
pub struct ArithmeticSequence<T> {
    label: String,
    source: Source<T>,
    bound: u64,
    magnitude_bound: T,
}

impl<T: Scalar> ArithmeticSequence<T> {
    pub fn sieve_backed(function: SieveFunction, engine: Arc<Sieve>) -> Self {
        let label = match function {
            SieveFunction::Mobius => "mu",
            SieveFunction::Liouville => "lambda",
            SieveFunction::MobiusOverK => "mu-over-k",
        };
        Self {
            label: label.into(),
            bound: engine.bound(),
            source: Source::Sieve { function, engine },
            magnitude_bound: T::one(),
        }
    }

    fn default_engine() -> Arc<Sieve> {
        Arc::new(Sieve::new(SieveConfig::default()).expect("default sieve configuration is valid"))
    }

    pub fn mobius() -> Self {
        Self::sieve_backed(SieveFunction::Mobius, Self::default_engine())
    }

    pub fn liouville() -> Self {
        Self::sieve_backed(SieveFunction::Liouville, Self::default_engine())
    }

    pub fn mobius_over_k() -> Self {
        Self::sieve_backed(SieveFunction::MobiusOverK, Self::default_engine())
    }

    pub fn closed_form(form: ClosedForm<T>, bound: u64) -> Self {
        Self {
            label: form.label().to_owned(),
            magnitude_bound: form.magnitude_bound(),
            source: Source::ClosedForm(form),
            bound,
        }
    }

    /// Materialized values `f(1), …, f(len)`.
    pub fn synthesized(label: impl Into<String>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("synthesized sequence is empty"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::argument(format!(
                "value at k = {} is not finite",
                i + 1
            )));
        }
        let magnitude_bound = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(Self {
            label: label.into(),
            bound: values.len() as u64,
            source: Source::Synthesized(values.into()),
            magnitude_bound,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn magnitude_bound(&self) -> T {
        self.magnitude_bound
    }

    pub fn closed_form_source(&self) -> Option<&ClosedForm<T>> {
        match &self.source {
            Source::ClosedForm(c) => Some(c),
            _ => None,
        }
    }

    /// Integer-valued sequences are summed exactly.
    pub fn is_integer_valued(&self) -> bool {
        matches!(
            self.source,
            Source::Sieve {
                function: SieveFunction::Mobius | SieveFunction::Liouville,
                ..
            }
        )
    }

    pub fn value(&self, k: u64) -> Result<T> {
        Ok(self.values(k, k)?[0])
    }

    /// `f(lo), …, f(hi)`.
    pub fn values(&self, lo: u64, hi: u64) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(hi.saturating_sub(lo) as usize + 1);
        self.for_each_chunk(lo, hi, |_, chunk| {
            match chunk {
                Chunk::Integer(v) => out.extend(v.iter().map(|&x| T::from_i8(x).unwrap())),
                Chunk::Real(v) => out.extend_from_slice(v),
            }
            Ok(())
        })?;
        Ok(out)
    }

    /// Streams `f(lo..=hi)` in increasing order as chunks tagged with their
    /// starting index.
    pub fn for_each_chunk<F>(&self, lo: u64, hi: u64, mut visit: F) -> Result<()>
    where
        F: FnMut(u64, Chunk<'_, T>) -> Result<()>,
    {
        if lo == 0 || lo > hi {
            return Err(Error::Range {
                lo,
                hi,
                reason: "require 1 <= lo <= hi".into(),
            });
        }
        if hi > self.bound {
            return Err(Error::Bound {
                what: "sequence index",
                value: hi,
                bound: self.bound,
            });
        }
        match &self.source {
            Source::Sieve { function, engine } => {
                let mut scratch: Vec<T> = Vec::new();
                engine.for_each_block(lo, hi, |block| match function {
                    SieveFunction::Mobius => visit(block.lo(), Chunk::Integer(block.mu())),
                    SieveFunction::Liouville => visit(block.lo(), Chunk::Integer(block.lambda())),
                    SieveFunction::MobiusOverK => {
                        scratch.clear();
                        scratch.extend(block.mu().iter().enumerate().map(|(i, &m)| {
                            T::from_i8(m).unwrap() / T::from_count(block.lo() + i as u64)
                        }));
                        visit(block.lo(), Chunk::Real(&scratch))
                    }
                })
            }
            Source::ClosedForm(form) => {
                let mut scratch: Vec<T> = Vec::new();
                let mut start = lo;
                while start <= hi {
                    let end = hi.min(start + CLOSED_FORM_CHUNK - 1);
                    scratch.clear();
                    scratch.extend((start..=end).map(|k| form.at(k)));
                    visit(start, Chunk::Real(&scratch))?;
                    start = end + 1;
                }
                Ok(())
            }
            Source::Synthesized(values) => {
                visit(lo, Chunk::Real(&values[(lo - 1) as usize..hi as usize]))
            }
        }
    }

    /// Checks the declared magnitude bound on `samples` spread over `1..=upto`.
    pub fn check_magnitude(&self, upto: u64, samples: u64) -> Result<()> {
        let upto = upto.min(self.bound);
        let samples = samples.clamp(1, upto);
        let step = (upto / samples).max(1);
        let slack = self.magnitude_bound * T::lit(1e-12);
        let mut k = 1;
        while k <= upto {
            let v = self.value(k)?;
            if v.abs() > self.magnitude_bound + slack {
                return Err(Error::argument(format!(
                    "|f({k})| = {} exceeds the declared bound {}",
                    v.abs(),
                    self.magnitude_bound
                )));
            }
            k += step;
        }
        Ok(())
    }

    /// CSV with header `k,f`.
    pub fn write_csv<W: Write>(&self, n: u64, mut w: W) -> Result<()> {
        writeln!(w, "k,f")?;
        let integer = self.is_integer_valued();
        self.for_each_chunk(1, n, |start, chunk| {
            match chunk {
                Chunk::Integer(v) => {
                    for (i, x) in v.iter().enumerate() {
                        writeln!(w, "{},{x}", start + i as u64)?;
                    }
                }
                Chunk::Real(v) => {
                    for (i, &x) in v.iter().enumerate() {
                        let k = start + i as u64;
                        if !integer && x.fract() == T::zero() && x.abs() < T::lit(1e15) {
                            writeln!(w, "{k},{}", x.to_i64().unwrap())?;
                        } else {
                            writeln!(w, "{k},{}", format_float(x))?;
                        }
                    }
                }
            }
            Ok(())
        })
    }

    /// Reads a `k,f` CSV with consecutive indices starting at 1.
    pub fn read_csv(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "k,f" => {}
            _ => return Err(Error::argument("line 1: expected header `k,f`")),
        }
        let mut values = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (k, f) = line
                .split_once(',')
                .ok_or_else(|| Error::argument(format!("line {}: expected `k,f`", i + 1)))?;
            let k: u64 = k
                .trim()
                .parse()
                .map_err(|_| Error::argument(format!("line {}: bad index `{k}`", i + 1)))?;
            if k != values.len() as u64 + 1 {
                return Err(Error::argument(format!(
                    "line {}: expected index {}, found {k}",
                    i + 1,
                    values.len() + 1
                )));
            }
            let f: f64 = f
                .trim()
                .parse()
                .map_err(|_| Error::argument(format!("line {}: bad value `{f}`", i + 1)))?;
            values.push(T::lit(f));
        }
        Self::synthesized(label, values)
    }
}
