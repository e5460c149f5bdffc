//! Truncated non-commutative power series in `k` indeterminates with exact
//! rational coefficients and vanishing constant term.
//!
//! A series is stored sparsely: a map from words (finite sequences over
//! `{1..k}`) of length `1..=degree` to nonzero `BigRational` coefficients.
//! Binary operations on series of different truncation degrees produce a
//! result truncated at the minimum of the two degrees.

mod cache;
pub mod doc;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::Partition;
use crate::{Error, Result};

pub(crate) use cache::{intervals, noncrossing, noncrossing_with_complements};

/// A word `(i_1, …, i_n)` over the alphabet `{1..k}`; indexes a series
/// coefficient. Words are ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<u8>);

impl Word {
    /// Builds a word from 1-based letters. Errors when empty or when a
    /// letter is zero (constant terms are excluded from series).
    pub fn new(letters: Vec<u8>) -> Result<Word> {
        if letters.is_empty() {
            return Err(Error::domain("word: must have length at least 1"));
        }
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::domain("word: letters are 1-based"));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_letter(&self) -> u8 {
        *self.0.iter().max().unwrap()
    }

    /// The restriction `w|B`: letters at the 1-based positions in `block`.
    pub fn restrict(&self, block: &[usize]) -> Word {
        Word(block.iter().map(|&pos| self.0[pos - 1]).collect())
    }

    /// Concatenation `uv`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// All `k^n` words of length `n` over `{1..k}`, in lexicographic order.
    pub fn enumerate(k: usize, n: usize) -> Vec<Word> {
        assert!(k >= 1 && k <= u8::MAX as usize && n >= 1);
        let mut out = Vec::with_capacity(k.pow(n as u32));
        let mut current = vec![1u8; n];
        loop {
            out.push(Word(current.clone()));
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if (current[pos] as usize) < k {
                    current[pos] += 1;
                    current[pos + 1..].fill(1);
                    break;
                }
            }
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Which transform space a serialized series lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    Moments,
    RTransform,
    Eta,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Moments => "moments",
            SeriesKind::RTransform => "r_transform",
            SeriesKind::Eta => "eta",
        }
    }

    pub fn parse(s: &str) -> Option<SeriesKind> {
        match s {
            "moments" => Some(SeriesKind::Moments),
            "r_transform" => Some(SeriesKind::RTransform),
            "eta" => Some(SeriesKind::Eta),
            _ => None,
        }
    }
}

/// Sign selector for [`NCSeries::geometric_ratio`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A truncated non-commutative power series with vanishing constant term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCSeries {
    k: usize,
    degree: usize,
    coeffs: BTreeMap<Word, BigRational>,
}

impl NCSeries {
    /// The zero series in `k` indeterminates, truncated at `degree`.
    pub fn zero(k: usize, degree: usize) -> Result<NCSeries> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::domain(format!("series: k = {k} out of range")));
        }
        if degree == 0 {
            return Err(Error::domain("series: degree must be positive"));
        }
        Ok(NCSeries {
            k,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// `Δ = z_1 + … + z_k`, the unit for boxed convolution.
    pub fn delta(k: usize, degree: usize) -> Result<NCSeries> {
        let mut f = NCSeries::zero(k, degree)?;
        for i in 1..=k {
            f.coeffs.insert(Word(vec![i as u8]), BigRational::one());
        }
        Ok(f)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero terms in word order (degree first, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.len() > self.degree {
            return Err(Error::domain(format!(
                "word of length {} exceeds truncation degree {}",
                w.len(),
                self.degree
            )));
        }
        if w.max_letter() as usize > self.k {
            return Err(Error::domain(format!(
                "word letter {} exceeds k = {}",
                w.max_letter(),
                self.k
            )));
        }
        Ok(())
    }

    /// Sets the coefficient of `w`, keeping the stored form normalized
    /// (zero coefficients are removed).
    pub fn set_coefficient(&mut self, w: Word, value: BigRational) -> Result<()> {
        self.check_word(&w)?;
        if value.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, value);
        }
        Ok(())
    }

    /// The coefficient of `w`; zero when absent. Errors on words outside
    /// the series' truncation range or alphabet.
    pub fn coefficient(&self, w: &Word) -> Result<BigRational> {
        self.check_word(w)?;
        Ok(self.coeffs.get(w).cloned().unwrap_or_else(BigRational::zero))
    }

    fn coeff_ref(&self, w: &Word) -> Option<&BigRational> {
        self.coeffs.get(w)
    }

    /// The generalized coefficient `Cf_{w;π}`: the product over blocks `B`
    /// of `π` of the coefficient of `w|B`.
    pub fn generalized_coefficient(&self, w: &Word, p: &Partition) -> Result<BigRational> {
        if p.n() != w.len() {
            return Err(Error::domain(format!(
                "generalized coefficient: partition of {} against word of length {}",
                p.n(),
                w.len()
            )));
        }
        self.check_word(w)?;
        Ok(self.generalized_unchecked(w, p))
    }

    pub(crate) fn generalized_unchecked(&self, w: &Word, p: &Partition) -> BigRational {
        let mut acc = BigRational::one();
        for block in p.blocks() {
            match self.coeff_ref(&w.restrict(block)) {
                Some(c) => acc *= c,
                None => return BigRational::zero(),
            }
        }
        acc
    }

    fn check_same_k(&self, other: &NCSeries, op: &str) -> Result<usize> {
        if self.k != other.k {
            return Err(Error::domain(format!(
                "{op}: mismatched indeterminate counts ({} vs {})",
                self.k, other.k
            )));
        }
        Ok(self.degree.min(other.degree))
    }

    /// Coefficientwise sum, truncated at the minimum degree.
    pub fn add(&self, other: &NCSeries) -> Result<NCSeries> {
        let degree = self.check_same_k(other, "add")?;
        let mut out = NCSeries::zero(self.k, degree)?;
        for (w, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if w.len() > degree {
                continue;
            }
            let entry = out.coeffs.entry(w.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Coefficientwise difference, truncated at the minimum degree.
    pub fn sub(&self, other: &NCSeries) -> Result<NCSeries> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, t: &BigRational) -> NCSeries {
        let mut out = NCSeries {
            k: self.k,
            degree: self.degree,
            coeffs: BTreeMap::new(),
        };
        if t.is_zero() {
            return out;
        }
        for (w, c) in &self.coeffs {
            out.coeffs.insert(w.clone(), c * t);
        }
        out
    }

    /// Concatenation (Cauchy) product, truncated at the minimum degree:
    /// `Cf_w(fg) = Σ_{w=uv} Cf_u(f)·Cf_v(g)` over nonempty `u`, `v`.
    pub fn multiply(&self, other: &NCSeries) -> Result<NCSeries> {
        let degree = self.check_same_k(other, "multiply")?;
        let mut out = NCSeries::zero(self.k, degree)?;
        for (u, a) in &self.coeffs {
            if u.len() + 1 > degree {
                continue;
            }
            // words sort by length first, so this bound covers exactly the
            // factors that fit under the truncation degree
            let longest_fit = Word(vec![self.k as u8; degree - u.len()]);
            for (v, b) in other.coeffs.range(..=longest_fit) {
                let entry = out
                    .coeffs
                    .entry(u.concat(v))
                    .or_insert_with(BigRational::zero);
                *entry += a * b;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `f/(1+f)` (sign [`Sign::Plus`]) or `f/(1−f)` (sign [`Sign::Minus`])
    /// in the commuting-product sense, via the finite Neumann sum
    /// `±f ∓ f² ± f³ …` truncated at the series degree.
    pub fn geometric_ratio(&self, sign: Sign) -> NCSeries {
        let mut acc = self.clone();
        let mut power = self.clone();
        for exponent in 2..=self.degree {
            power = power
                .multiply(self)
                .expect("powers of a series share its alphabet");
            if power.is_zero() {
                break;
            }
            let alternate = sign == Sign::Plus && exponent % 2 == 0;
            let term = if alternate {
                power.scale(&-BigRational::one())
            } else {
                power.clone()
            };
            acc = acc.add(&term).expect("sum of powers shares the alphabet");
        }
        acc
    }

    /// Boxed convolution: per word `w` of length `n`,
    /// `Cf_w(f★g) = Σ_{π ∈ NC(n)} Cf_{w;π}(f)·Cf_{w;K(π)}(g)`.
    pub fn boxed_convolution(&self, other: &NCSeries) -> Result<NCSeries> {
        let degree = self.check_same_k(other, "boxed_convolution")?;
        let mut out = NCSeries::zero(self.k, degree)?;
        for n in 1..=degree {
            let pairs = noncrossing_with_complements(n)?;
            for w in Word::enumerate(self.k, n) {
                let mut total = BigRational::zero();
                for (pi, kpi) in pairs.iter() {
                    let left = self.generalized_unchecked(&w, pi);
                    if left.is_zero() {
                        continue;
                    }
                    let right = other.generalized_unchecked(&w, kpi);
                    if right.is_zero() {
                        continue;
                    }
                    total += left * right;
                }
                if !total.is_zero() {
                    out.coeffs.insert(w, total);
                }
            }
        }
        Ok(out)
    }

    /// The generalized coefficient of a boxed convolution:
    /// `Cf_{w;q}(f★g) = Σ_{π ≤ q} Cf_{w;π}(f)·Cf_{w;K_q(π)}(g)`.
    /// Requires `q` non-crossing on `{1..len(w)}`.
    pub fn boxed_convolution_generalized(
        &self,
        other: &NCSeries,
        w: &Word,
        q: &Partition,
    ) -> Result<BigRational> {
        self.check_same_k(other, "boxed_convolution_generalized")?;
        if !q.is_noncrossing() {
            return Err(Error::domain(
                "boxed_convolution_generalized: partition must be non-crossing",
            ));
        }
        if q.n() != w.len() {
            return Err(Error::domain(
                "boxed_convolution_generalized: partition size must match word length",
            ));
        }
        self.check_word(w)?;
        other.check_word(w)?;
        let mut total = BigRational::zero();
        for pi in noncrossing(w.len())?.iter() {
            if !pi.refines(q)? {
                continue;
            }
            let left = self.generalized_unchecked(w, pi);
            if left.is_zero() {
                continue;
            }
            let relative = pi.relative_kreweras(q)?;
            let right = other.generalized_unchecked(w, &relative);
            if right.is_zero() {
                continue;
            }
            total += left * right;
        }
        Ok(total)
    }
}
