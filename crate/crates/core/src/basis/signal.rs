//! Exactly integrable test signals: piecewise polynomials on `[0, 2π]` plus
//! global trigonometric terms with integer frequencies.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::poly::TrigPoly;
use crate::error::{Error, Result};

/// Highest piece-polynomial degree handled by the closed-form integrals.
pub const MAX_PIECE_DEGREE: usize = 6;

/// Polynomial in the global variable `t`, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| m as f64 * c)
                .collect(),
        )
    }

    pub fn antiderivative(&self) -> Self {
        let mut out = vec![0.0];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c / (m + 1) as f64),
        );
        Self::new(out)
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + other.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// `(∫_a^b P(t) cos kt dt, ∫_a^b P(t) sin kt dt)` for `k ≥ 1`, by repeated
    /// integration by parts applied to the whole polynomial.
    pub fn trig_moments(&self, k: u32, a: f64, b: f64) -> (f64, f64) {
        let chain = self.derivative_chain();
        let (ca, sa) = trig_antiderivative(&chain, k, a);
        let (cb, sb) = trig_antiderivative(&chain, k, b);
        (cb - ca, sb - sa)
    }

    pub(crate) fn derivative_chain(&self) -> Vec<Polynomial> {
        let mut chain = Vec::with_capacity(self.coeffs.len());
        let mut cur = self.clone();
        while !cur.is_zero() {
            let next = cur.derivative();
            chain.push(cur);
            cur = next;
        }
        chain
    }
}

/// Antiderivatives of `P(t) cos kt` and `P(t) sin kt` at `t`, given the chain
/// `P, P', P'', …`. Follows `∫P e^{ikt} = e^{ikt} Σ_m (-1)^m P^{(m)} / (ik)^{m+1}`.
fn trig_antiderivative(chain: &[Polynomial], k: u32, t: f64) -> (f64, f64) {
    let kf = k as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    let mut kpow = kf;
    for (m, d) in chain.iter().enumerate() {
        let v = d.eval(t) / kpow;
        // (-1)^m (-i)^{m+1} cycles through -i, 1, i, -1
        match m % 4 {
            0 => im -= v,
            1 => re += v,
            2 => im += v,
            _ => re -= v,
        }
        kpow *= kf;
    }
    let (s, c) = (kf * t).sin_cos();
    (c * re - s * im, s * re + c * im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Cos,
    Sin,
}

impl TrigKind {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            TrigKind::Cos => x.cos(),
            TrigKind::Sin => x.sin(),
        }
    }
}

/// `amplitude · cos(kt)` or `amplitude · sin(kt)` on all of `[0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub amplitude: f64,
    pub frequency: u32,
    pub kind: TrigKind,
}

impl TrigTerm {
    pub fn cos(amplitude: f64, frequency: u32) -> Self {
        Self {
            amplitude,
            frequency,
            kind: TrigKind::Cos,
        }
    }

    pub fn sin(amplitude: f64, frequency: u32) -> Self {
        Self {
            amplitude,
            frequency,
            kind: TrigKind::Sin,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * self.kind.eval(self.frequency as f64 * t)
    }
}

/// Polynomial on `[start, end)`; the last piece also covers `t = 2π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    pub end: f64,
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSignal {
    pieces: Vec<Piece>,
    trig: Vec<TrigTerm>,
}

impl ExactSignal {
    /// Validates that the pieces tile `[0, 2π]` in order and that all
    /// trigonometric frequencies are positive.
    pub fn new(pieces: Vec<Piece>, trig: Vec<TrigTerm>) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::InvalidSignal("at least one piece is required".into()))?;
        if first.start != 0.0 {
            return Err(Error::InvalidSignal(format!(
                "first piece starts at {} instead of 0",
                first.start
            )));
        }
        for w in pieces.windows(2) {
            if w[0].end != w[1].start {
                return Err(Error::InvalidSignal(format!(
                    "pieces are not contiguous: {} vs {}",
                    w[0].end, w[1].start
                )));
            }
        }
        for p in &pieces {
            if p.end.partial_cmp(&p.start) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::InvalidSignal(format!(
                    "empty or reversed interval [{}, {})",
                    p.start, p.end
                )));
            }
            if p.poly.coeffs().iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidSignal(
                    "non-finite polynomial coefficient".into(),
                ));
            }
        }
        let last = pieces.last().expect("non-empty");
        if (last.end - TAU).abs() > 1e-12 {
            return Err(Error::InvalidSignal(format!(
                "last piece ends at {} instead of 2π",
                last.end
            )));
        }
        if let Some(t) = trig.iter().find(|t| t.frequency == 0) {
            return Err(Error::InvalidSignal(format!(
                "trigonometric term {t:?} has zero frequency; use a polynomial piece"
            )));
        }
        if trig.iter().any(|t| !t.amplitude.is_finite()) {
            return Err(Error::InvalidSignal(
                "non-finite trigonometric amplitude".into(),
            ));
        }
        let mut pieces = pieces;
        pieces.last_mut().expect("non-empty").end = TAU;
        Ok(Self { pieces, trig })
    }

    /// One polynomial on all of `[0, 2π]`.
    pub fn polynomial(poly: Polynomial) -> Self {
        Self {
            pieces: vec![Piece {
                start: 0.0,
                end: TAU,
                poly,
            }],
            trig: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(Polynomial::zero())
    }

    /// Pure trigonometric sum.
    pub fn trig(terms: Vec<TrigTerm>) -> Result<Self> {
        Self::new(
            vec![Piece {
                start: 0.0,
                end: TAU,
                poly: Polynomial::zero(),
            }],
            terms,
        )
    }

    /// Piecewise polynomial given by `(end, coefficients)` breakpoints starting at 0.
    pub fn piecewise(breaks: &[(f64, Vec<f64>)]) -> Result<Self> {
        let mut start = 0.0;
        let mut pieces = Vec::with_capacity(breaks.len());
        for (end, coeffs) in breaks {
            pieces.push(Piece {
                start,
                end: *end,
                poly: Polynomial::new(coeffs.clone()),
            });
            start = *end;
        }
        Self::new(pieces, Vec::new())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn trig_terms(&self) -> &[TrigTerm] {
        &self.trig
    }

    pub fn with_trig_term(mut self, term: TrigTerm) -> Result<Self> {
        if term.frequency == 0 || !term.amplitude.is_finite() {
            return Err(Error::InvalidSignal(format!(
                "invalid trigonometric term {term:?}"
            )));
        }
        self.trig.push(term);
        Ok(self)
    }

    /// Adds `poly` to every piece.
    pub fn add_polynomial(&self, poly: &Polynomial) -> Self {
        let mut out = self.clone();
        for p in &mut out.pieces {
            p.poly = p.poly.add(poly);
        }
        out
    }

    /// `x ↦ ∫_0^x sig(t) dt`, continuous across piece boundaries.
    pub fn integral_from_zero(&self) -> Self {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        let mut carry = 0.0;
        for p in &self.pieces {
            let anti = p.poly.antiderivative();
            // value at `start` must equal the integral accumulated so far
            let shift = carry - anti.eval(p.start);
            carry = anti.eval(p.end) + shift;
            pieces.push(Piece {
                start: p.start,
                end: p.end,
                poly: anti.add(&Polynomial::constant(shift)),
            });
        }
        let mut constant = 0.0;
        let trig = self
            .trig
            .iter()
            .map(|t| {
                let k = t.frequency as f64;
                match t.kind {
                    TrigKind::Cos => TrigTerm::sin(t.amplitude / k, t.frequency),
                    TrigKind::Sin => {
                        constant += t.amplitude / k;
                        TrigTerm::cos(-t.amplitude / k, t.frequency)
                    }
                }
            })
            .collect();
        let out = Self { pieces, trig };
        out.add_polynomial(&Polynomial::constant(constant))
    }

    pub fn max_piece_degree(&self) -> usize {
        self.pieces
            .iter()
            .map(|p| p.poly.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let piece = self
            .pieces
            .iter()
            .find(|p| t < p.end)
            .unwrap_or_else(|| self.pieces.last().expect("non-empty"));
        piece.poly.eval(t) + self.trig.iter().map(|term| term.eval(t)).sum::<f64>()
    }

    /// Highest frequency when the signal is a trigonometric polynomial, i.e. its
    /// polynomial part is one global constant. `None` otherwise.
    pub fn band_limit(&self) -> Option<u32> {
        let first = &self.pieces[0].poly;
        let constant = first.degree() == 0 && self.pieces.iter().all(|p| p.poly == *first);
        constant.then(|| self.trig.iter().map(|t| t.frequency).max().unwrap_or(0))
    }

    /// Amplitudes of the trigonometric part merged per `(frequency, kind)`.
    fn merged_trig(&self) -> Vec<(u32, f64, f64)> {
        let mut merged: Vec<(u32, f64, f64)> = Vec::new();
        for t in &self.trig {
            let slot = match merged.iter_mut().find(|m| m.0 == t.frequency) {
                Some(slot) => slot,
                None => {
                    merged.push((t.frequency, 0.0, 0.0));
                    merged.last_mut().expect("just pushed")
                }
            };
            match t.kind {
                TrigKind::Cos => slot.1 += t.amplitude,
                TrigKind::Sin => slot.2 += t.amplitude,
            }
        }
        merged
    }

    /// Exact `∥·∥²_{L²(0,2π)}`.
    pub fn norm_squared(&self) -> f64 {
        let merged = self.merged_trig();
        let mut acc = 0.0;
        for piece in &self.pieces {
            acc += piece
                .poly
                .mul(&piece.poly)
                .integrate(piece.start, piece.end);
            if piece.poly.is_zero() {
                continue;
            }
            for &(k, ca, sa) in &merged {
                let (c, s) = piece.poly.trig_moments(k, piece.start, piece.end);
                acc += 2.0 * (ca * c + sa * s);
            }
        }
        acc + PI * merged.iter().map(|(_, c, s)| c * c + s * s).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_squared().max(0.0).sqrt()
    }
}

/// Orthogonal projection `P_n sig` with all coefficient integrals in closed form.
pub fn fourier_coeffs_exact(sig: &ExactSignal, n: usize) -> Result<TrigPoly> {
    let degree = sig.max_piece_degree();
    if degree > MAX_PIECE_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree,
            max: MAX_PIECE_DEGREE,
        });
    }
    let inv_sqrt_pi = 1.0 / PI.sqrt();
    let mut out = TrigPoly::zeros(n);

    let mut c0 = 0.0;
    for piece in &sig.pieces {
        c0 += piece.poly.integrate(piece.start, piece.end);
    }
    out.set_c0(c0 / TAU.sqrt());

    let chains: Vec<_> = sig
        .pieces
        .iter()
        .filter(|p| !p.poly.is_zero())
        .map(|p| (p.start, p.end, p.poly.derivative_chain()))
        .collect();
    for k in 1..=n {
        let mut c = 0.0;
        let mut s = 0.0;
        for (a, b, chain) in &chains {
            let (ca, sa) = trig_antiderivative(chain, k as u32, *a);
            let (cb, sb) = trig_antiderivative(chain, k as u32, *b);
            c += cb - ca;
            s += sb - sa;
        }
        out.cos_coeffs_mut()[k - 1] = c * inv_sqrt_pi;
        out.sin_coeffs_mut()[k - 1] = s * inv_sqrt_pi;
    }
    // ∫ cos²(kt) = ∫ sin²(kt) = π over the full period
    for term in &sig.trig {
        let k = term.frequency as usize;
        if k <= n {
            let v = term.amplitude * PI.sqrt();
            match term.kind {
                TrigKind::Cos => out.cos_coeffs_mut()[k - 1] += v,
                TrigKind::Sin => out.sin_coeffs_mut()[k - 1] += v,
            }
        }
    }
    Ok(out)
}

/// `∥poly − exact∥_{L²(0,2π)}` without grid quadrature.
///
/// Equal to `√(∥poly∥² − 2⟨poly, exact⟩ + ∥exact∥²)`, evaluated as the
/// coefficient distance to `P_n exact` plus the tail energy of `exact`. The
/// tail is computed from coefficients when `exact` is band-limited and from
/// `∥exact∥² − ∥P_n exact∥²` (clamped at 0) otherwise.
pub fn l2_error_exact(poly: &TrigPoly, exact: &ExactSignal) -> Result<f64> {
    let n = poly.degree();
    if let Some(k) = exact.band_limit() {
        let m = n.max(k as usize);
        let proj = fourier_coeffs_exact(exact, m)?;
        return Ok(poly.resized(m).distance(&proj));
    }
    let proj = fourier_coeffs_exact(exact, n)?;
    let inner = poly.sub(&proj).norm_squared();
    let tail = (exact.norm_squared() - proj.norm_squared()).max(0.0);
    Ok((inner + tail).sqrt())
}
