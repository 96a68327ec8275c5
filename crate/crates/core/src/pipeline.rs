//! The Porteous count of maximal subbundles for a preset.
//!
//! Over `C × J × M₀` the upstairs bundle is `𝒰* ⊗ ℒ* ⊗ p*(E ⊗ K)`. Its
//! pushforward along the curve is `ℰ` (higher direct images vanish), and `ℱ`
//! is `n` copies of `𝒰_x* ⊗ ℒ_x*` for each of the `2g - 2` points of a
//! canonical divisor. The count is `c_top(ℱ - ℰ)` integrated over `J × M₀`,
//! divided by the degree `n'^{2g}` of the covering `J × M₀ → M(n', d')`.
//!
//! The number is a Porteous (degeneracy-locus) number. It counts maximal
//! subbundles exactly for sufficiently general `E`, and counts stable maximal
//! subbundles with multiplicities when only the stability-degree and
//! finiteness conditions are assumed.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::chern::{c_from_ch, ch_from_c, ChernCharacter, TotalChernClass};
use crate::error::{Error, Result};
use crate::formulas;
use crate::ring::{GradedElement, PresentationBuilder, RingPresentation};
use crate::scalar::{fmt_rational, ParamScalar};
use crate::text::Document;

pub const CAVEATS: &str = "Porteous number of the degeneracy locus; equals the number of maximal \
subbundles for general E. Assuming only s_{n'}(E) = n'(n-n')(g-1), the lower stability bounds \
and finiteness of the locus, it counts stable maximal subbundles with multiplicities. \
Vanishing of R^1 q_* is assumed.";

#[derive(Debug, Clone)]
pub struct PresetSpec {
    pub name: String,
    ring: Arc<RingPresentation>,
    /// Rank `n'` of the subbundles (and of `𝒰`).
    pub subbundle_rank: u32,
    pub genus: u32,
    /// Normalised subbundle degree `d'`.
    pub subbundle_degree: i64,
    /// Name of the formal parameter standing for the rank `n` of `E`.
    pub rank_parameter: String,
    universal_chern: TotalChernClass,
    poincare_chern: TotalChernClass,
}

impl PresetSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        ring: Arc<RingPresentation>,
        subbundle_rank: u32,
        genus: u32,
        subbundle_degree: i64,
        rank_parameter: &str,
        universal_chern: TotalChernClass,
        poincare_chern: TotalChernClass,
    ) -> Result<Self> {
        if !Arc::ptr_eq(universal_chern.ring(), &ring) || !Arc::ptr_eq(poincare_chern.ring(), &ring)
        {
            return Err(Error::PresentationMismatch);
        }
        Ok(PresetSpec {
            name: name.to_string(),
            ring,
            subbundle_rank,
            genus,
            subbundle_degree,
            rank_parameter: rank_parameter.to_string(),
            universal_chern,
            poincare_chern,
        })
    }

    /// Reads a presentation file with a preset header.
    pub fn from_text(text: &str) -> Result<Self> {
        let doc = Document::parse(text)?;
        let ring = PresentationBuilder::from_document(&doc)?.build()?;
        let field = |key: &str| -> Result<String> {
            doc.single(key)?
                .map(|e| e.text.clone())
                .ok_or_else(|| Error::InvalidPreset(format!("missing `{key}`")))
        };
        let int = |key: &str| -> Result<i64> {
            let v = field(key)?;
            v.parse()
                .map_err(|_| Error::InvalidPreset(format!("`{key}` must be an integer, got `{v}`")))
        };
        let subbundle_rank = u32::try_from(int("subbundle_rank")?)
            .map_err(|_| Error::InvalidPreset("negative subbundle rank".into()))?;
        let genus = u32::try_from(int("genus")?)
            .map_err(|_| Error::InvalidPreset("negative genus".into()))?;
        let universal = TotalChernClass::parse(&ring, &field("universal_chern")?)?;
        let poincare = TotalChernClass::parse(&ring, &field("poincare_chern")?)?;
        Self::new(
            &field("preset")?,
            ring.clone(),
            subbundle_rank,
            genus,
            int("subbundle_degree")?,
            &field("rank_parameter")?,
            universal,
            poincare,
        )
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn universal_chern(&self) -> &TotalChernClass {
        &self.universal_chern
    }

    pub fn poincare_chern(&self) -> &TotalChernClass {
        &self.poincare_chern
    }

    pub fn covering_degree(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.subbundle_rank), 2 * self.genus as usize)
    }

    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus as i64 - 2
    }

    fn rank(&self) -> ParamScalar {
        ParamScalar::param(&self.rank_parameter)
    }

    /// Degree `d` of `E` forced by `n'd - nd' = n'(n - n')(g - 1)`, as a
    /// polynomial in `n`.
    pub fn induced_degree(&self) -> ParamScalar {
        let np = self.subbundle_rank as i64;
        let g1 = self.genus as i64 - 1;
        let n = self.rank();
        let linear = BigRational::new((np * g1 + self.subbundle_degree).into(), np.into());
        &n.scale(&linear) - &ParamScalar::from_int(np * g1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::Inadmissible(format!(
                "genus {} < 2; the curve must have genus at least 2",
                self.genus
            )));
        }
        if self.subbundle_rank < 1 {
            return Err(Error::Inadmissible(
                "subbundle rank must be positive".into(),
            ));
        }
        if self.subbundle_degree != 1 {
            return Err(Error::InvalidPreset(format!(
                "subbundle degree is normalised to 1, got {}",
                self.subbundle_degree
            )));
        }
        if (self.subbundle_rank as i64).gcd(&self.subbundle_degree) != 1 {
            return Err(Error::Inadmissible(
                "subbundle rank and degree must be coprime for a universal bundle".into(),
            ));
        }
        if self.ring.fiber().is_none() {
            return Err(Error::InvalidPreset(
                "presentation needs a fiber class".into(),
            ));
        }
        if !self.ring.params().contains(&self.rank_parameter) {
            return Err(Error::InvalidPreset(format!(
                "rank parameter `{}` is not declared",
                self.rank_parameter
            )));
        }
        Ok(())
    }

    /// Whether the integer rank `n` satisfies the standing hypotheses:
    /// `n' < n` and the induced degree `d` is an integer. Rank-2 subbundles
    /// in genus 2 use the conditions of [`formulas::m2_closed`].
    pub fn is_admissible(&self, n: i64) -> bool {
        if n <= self.subbundle_rank as i64 {
            return false;
        }
        if (self.subbundle_rank, self.genus) == (2, 2) && !formulas::m2_closed(n).admissible {
            return false;
        }
        self.induced_degree()
            .eval_at(&self.rank_parameter, n)
            .is_ok_and(|d| d.is_integer())
    }

    pub fn admissible_ranks(&self, count: usize) -> Vec<i64> {
        (1..)
            .filter(|&n| self.is_admissible(n))
            .take(count)
            .collect()
    }

    fn character(&self, text: &str) -> Result<ChernCharacter> {
        ChernCharacter::parse(&self.ring, text)
    }

    fn fiber_name(&self) -> &str {
        &self.ring.generator_names()[self.ring.fiber().expect("validated")]
    }
}

/// Character of `𝒰* ⊗ ℒ* ⊗ p*(E ⊗ K)` times the Todd class of the curve.
pub fn upstairs_character(preset: &PresetSpec) -> Result<ChernCharacter> {
    preset.validate()?;
    let ring = preset.ring();
    let f = GradedElement::generator(ring, preset.fiber_name())?;
    let n = preset.rank();
    let ch_u = ch_from_c(
        preset.universal_chern(),
        &ParamScalar::from_int(preset.subbundle_rank as i64),
    );
    let ch_l = ch_from_c(preset.poincare_chern(), &ParamScalar::one());
    let ekd = &preset.induced_degree()
        + &n.scale(&BigRational::from_integer(preset.canonical_degree().into()));
    let ch_ek = ChernCharacter::from_element(&(&GradedElement::scalar(ring, n) + &f.scale(&ekd)));
    let td = preset.character(&format!("1 - {}*{}", preset.genus - 1, preset.fiber_name()))?;
    ch_u.dual()
        .tensor(&ch_l.dual())?
        .tensor(&ch_ek)?
        .tensor(&td)
}

/// `ch(ℰ)` by Grothendieck-Riemann-Roch along the curve.
pub fn sheaf_e_character(preset: &PresetSpec) -> Result<ChernCharacter> {
    upstairs_character(preset)?.pushforward_fiber()
}

/// `ch(ℱ)`: `(2g - 2) n` copies of `𝒰_x* ⊗ ℒ_x*`.
pub fn sheaf_f_character(preset: &PresetSpec) -> Result<ChernCharacter> {
    preset.validate()?;
    let ch_u = ch_from_c(
        preset.universal_chern(),
        &ParamScalar::from_int(preset.subbundle_rank as i64),
    );
    let ch_l = ch_from_c(preset.poincare_chern(), &ParamScalar::one());
    let local = ch_u
        .restrict_to_point()
        .dual()
        .tensor(&ch_l.restrict_to_point().dual())?;
    let copies = preset
        .rank()
        .scale(&BigRational::from_integer(preset.canonical_degree().into()));
    Ok(local.scale(&copies))
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub preset: String,
    pub genus: u32,
    pub subbundle_rank: u32,
    pub subbundle_degree: i64,
    pub rank_parameter: String,
    pub induced_degree: ParamScalar,
    pub covering_degree: BigInt,
    pub upstairs: ChernCharacter,
    pub ch_e: ChernCharacter,
    pub ch_f: ChernCharacter,
    pub ch_difference: ChernCharacter,
    pub c_top: GradedElement,
    /// `c_top(ℱ - ℰ)[J × M₀]`, before dividing by the covering degree.
    pub integral: ParamScalar,
    pub count: ParamScalar,
}

pub fn count_maximal_subbundles(preset: &PresetSpec) -> Result<CountResult> {
    let upstairs = upstairs_character(preset)?;
    let ch_e = upstairs.pushforward_fiber()?;
    let ch_f = sheaf_f_character(preset)?;
    let ch_difference = ch_f.sub(&ch_e)?;
    let top = (preset.ring().top_degree() / 2) as usize;
    let c_top = c_from_ch(&ch_difference).component(top);
    let integral = c_top.integrate()?;
    let covering = BigRational::from_integer(preset.covering_degree());
    let count = integral.div_rational(&covering)?;
    Ok(CountResult {
        preset: preset.name.clone(),
        genus: preset.genus,
        subbundle_rank: preset.subbundle_rank,
        subbundle_degree: preset.subbundle_degree,
        rank_parameter: preset.rank_parameter.clone(),
        induced_degree: preset.induced_degree(),
        covering_degree: preset.covering_degree(),
        upstairs,
        ch_e,
        ch_f,
        ch_difference,
        c_top,
        integral,
        count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub exponents: Vec<(String, u32)>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialRecord {
    pub text: String,
    pub terms: Vec<TermRecord>,
}

impl From<&ParamScalar> for PolynomialRecord {
    fn from(s: &ParamScalar) -> Self {
        PolynomialRecord {
            text: s.to_string(),
            terms: s
                .terms()
                .map(|(m, c)| TermRecord {
                    exponents: m.factors().to_vec(),
                    coefficient: fmt_rational(c),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntermediateRecord {
    pub upstairs: String,
    pub ch_e: String,
    pub ch_f: String,
    pub ch_difference: String,
    pub c_top: String,
}

/// Machine-readable form of a `CountResult`; all rationals are exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub preset: String,
    pub label: String,
    pub genus: u32,
    pub subbundle_rank: u32,
    pub subbundle_degree: i64,
    pub rank_parameter: String,
    pub induced_degree: PolynomialRecord,
    pub covering_degree: String,
    pub count: PolynomialRecord,
    pub integral: PolynomialRecord,
    pub intermediates: IntermediateRecord,
    pub caveats: String,
}

impl CountResult {
    /// `m_{n'}`.
    pub fn label(&self) -> String {
        format!("m_{}", self.subbundle_rank)
    }

    pub fn specialize(&self, n: i64) -> Result<BigRational> {
        self.count.eval_at(&self.rank_parameter, n)
    }

    pub fn headline(&self) -> String {
        format!("{} = {}", self.label(), self.count)
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = format!("{}\n", self.headline());
        if verbose {
            let lines = [
                ("preset", self.preset.clone()),
                ("genus", self.genus.to_string()),
                ("subbundle rank", self.subbundle_rank.to_string()),
                ("subbundle degree", self.subbundle_degree.to_string()),
                ("induced degree d", self.induced_degree.to_string()),
                ("covering degree", self.covering_degree.to_string()),
                ("ch(upstairs)", self.upstairs.to_string()),
                ("ch(E)", self.ch_e.to_string()),
                ("ch(F)", self.ch_f.to_string()),
                ("ch(F - E)", self.ch_difference.to_string()),
                ("c_top(F - E)", self.c_top.to_string()),
                ("integral", self.integral.to_string()),
                ("note", CAVEATS.to_string()),
            ];
            for (k, v) in lines {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        out
    }

    pub fn to_record(&self) -> CountRecord {
        CountRecord {
            preset: self.preset.clone(),
            label: self.label(),
            genus: self.genus,
            subbundle_rank: self.subbundle_rank,
            subbundle_degree: self.subbundle_degree,
            rank_parameter: self.rank_parameter.clone(),
            induced_degree: (&self.induced_degree).into(),
            covering_degree: self.covering_degree.to_string(),
            count: (&self.count).into(),
            integral: (&self.integral).into(),
            intermediates: IntermediateRecord {
                upstairs: self.upstairs.to_string(),
                ch_e: self.ch_e.to_string(),
                ch_f: self.ch_f.to_string(),
                ch_difference: self.ch_difference.to_string(),
                c_top: self.c_top.to_string(),
            },
            caveats: CAVEATS.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Internal consistency suite for a preset. The presentation itself was
/// already checked for termination and confluence when it was loaded.
pub fn consistency_checks(preset: &PresetSpec) -> Result<Vec<CheckOutcome>> {
    let result = count_maximal_subbundles(preset)?;
    let mut out = vec![outcome(
        "presentation confluent",
        true,
        format!("{} generators", preset.ring().num_generators()),
    )];

    let np = preset.subbundle_rank as i64;
    let drop = ParamScalar::from_int(np * np * (preset.genus as i64 - 1));
    let expected_rank = result.ch_f.rank() - &drop;
    out.push(outcome(
        "rank identity",
        result.ch_e.rank() == &expected_rank,
        format!(
            "rk E = {}, rk F - n'^2(g-1) = {}",
            result.ch_e.rank(),
            expected_rank
        ),
    ));

    let top = (preset.ring().top_degree() / 2) as usize;
    let ch_top = result.ch_difference.component(top);
    out.push(outcome(
        "top character component vanishes",
        ch_top.is_zero(),
        format!("ch_{top}(F - E) = {ch_top}"),
    ));

    let c_e = c_from_ch(&result.ch_e);
    let c_diff = c_from_ch(&result.ch_difference);
    let c_f = c_from_ch(&result.ch_f);
    let product = c_e.mul(&c_diff)?;
    out.push(outcome(
        "Porteous consistency",
        product == c_f,
        "c(E) c(F - E) = c(F)".to_string(),
    ));

    let ranks = preset.admissible_ranks(20);
    let mut bad = Vec::new();
    for &n in &ranks {
        let v = result.specialize(n)?;
        if !(v.is_integer() && v.is_positive()) {
            bad.push(format!("n={n}: {}", fmt_rational(&v)));
        }
    }
    out.push(outcome(
        "integrality",
        bad.is_empty(),
        if bad.is_empty() {
            format!("positive integer at n = {ranks:?}")
        } else {
            bad.join(", ")
        },
    ));

    if let Some(closed) = closed_form(preset) {
        out.push(outcome(
            "closed form",
            closed == result.count,
            format!("expected {closed}"),
        ));
    }
    Ok(out)
}

/// Known closed forms: `n^g` for line subbundles, `n^3(n^2 + 2)/48` for
/// rank-2 subbundles in genus 2.
pub fn closed_form(preset: &PresetSpec) -> Option<ParamScalar> {
    let n = preset.rank();
    match (preset.subbundle_rank, preset.genus) {
        (1, g) => Some(n.pow(g)),
        (2, 2) => {
            let s = &n.pow(3) * &(&n.pow(2) + &ParamScalar::from_int(2));
            s.div_rational(&BigRational::from_integer(48.into())).ok()
        }
        _ => None,
    }
}
