//! Evaluating a single morphism or relator on parsed input.

use std::str::FromStr;

use clap::ValueEnum;
use polylog_core::groups::{relator, Boundary, Relator, RelatorKind};
use polylog_core::morphisms::*;
use polylog_core::{ConfigSum, Configuration, Context, Derivation, Result, Shape, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Morphism {
    #[value(name = "tau0_2")]
    Tau02,
    #[value(name = "tau1_2")]
    Tau12,
    #[value(name = "tau0_3")]
    Tau03,
    #[value(name = "tau1_3")]
    Tau13,
    #[value(name = "tau1_3_alt5")]
    Tau13Alt5,
    #[value(name = "tau2_3")]
    Tau23,
    #[value(name = "tau0_n")]
    Tau0N,
}

/// Which formal sum of configurations the morphism is applied to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// The configuration itself.
    #[default]
    Itself,
    /// Its boundary under d.
    D,
    /// Its boundary under d′.
    Dprime,
}

/// Builds a context from variable names and derivation images.
pub fn context(names: &[String], derivation: &[String]) -> Result<Context> {
    let refs: Vec<&str> = derivation.iter().map(String::as_str).collect();
    let d = Derivation::parse(&refs, names)?;
    Context::with_names(names.to_vec(), d)
}

/// Canonical text of the morphism applied to `source` of `config`; with
/// `differential`, the image under the target group's differential instead.
pub fn apply(ctx: &Context, m: Morphism, n: usize, config: &str, source: Source, differential: bool) -> Result<String> {
    let c = Configuration::parse(config, ctx)?;
    let sum = match source {
        Source::Itself => ConfigSum::single(c),
        Source::D => c.boundary_d(),
        Source::Dprime => c.boundary_dprime(),
    };
    Ok(match m {
        Morphism::Tau02 => on_sum_tensor(ctx, &sum, Shape::FWedge(1), tau0_2)?.to_text(ctx),
        Morphism::Tau03 => on_sum_tensor(ctx, &sum, Shape::FWedge(2), tau0_3)?.to_text(ctx),
        Morphism::Tau0N => {
            let shape = Shape::FWedge(n.saturating_sub(1) as u8);
            on_sum_tensor(ctx, &sum, shape, |x, y| tau0_n(x, y, n))?.to_text(ctx)
        }
        Morphism::Tau12 => {
            let b = on_sum_beta(ctx, &sum, Weight::Two, tau1_2)?;
            if differential { b.partial_d2(ctx)?.to_text(ctx) } else { b.to_text(ctx) }
        }
        Morphism::Tau23 => {
            let b = on_sum_beta(ctx, &sum, Weight::Three, tau2_3)?;
            if differential { b.partial_d3(ctx)?.to_text(ctx) } else { b.to_text(ctx) }
        }
        Morphism::Tau13 | Morphism::Tau13Alt5 => {
            let f = if m == Morphism::Tau13 { tau1_3 } else { tau1_3_alt5 };
            let e = on_sum_mid(ctx, &sum, f)?;
            if differential { e.partial_mid(ctx)?.to_text(ctx) } else { e.to_text(ctx) }
        }
    })
}

/// A relator and the text of its boundary image.
pub fn relator_text(ctx: &Context, kind: &str, params: &[String]) -> Result<String> {
    let kind = RelatorKind::from_str(kind)?;
    let params = params.iter().map(|p| ctx.parse(p)).collect::<Result<Vec<_>>>()?;
    let r = relator(ctx, kind, &params)?;
    let body = match &r {
        Relator::B2(e) => e.to_text(ctx),
        Relator::BetaD(e) => e.to_text(ctx),
        Relator::Cathelineau(e) => e.to_text(ctx),
    };
    let image = match r.boundary(ctx)? {
        Boundary::Tensor(t) => t.to_text(ctx),
        Boundary::Mid(m) => m.canonical(ctx).to_text(ctx),
    };
    Ok(format!("{body}boundary:\n{image}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Context {
        context(&["a".into(), "b".into()], &["a*(1-a)".into(), "b*(1-b)".into()]).unwrap()
    }

    #[test]
    fn tau1_2_of_the_standard_four_points() {
        let ctx = ab();
        let out = apply(&ctx, Morphism::Tau12, 2, "[[0,1],[1,0],[1,1],[a,1]]", Source::Itself, false).unwrap();
        assert_eq!(out.trim(), "(1)·⟦a⟧ᴰ₂");
    }

    #[test]
    fn claim1_square_through_the_cli_path() {
        let ctx = ab();
        let cfg = "[[1,2],[a,1],[3,b],[1,a+b]]";
        let lhs = apply(&ctx, Morphism::Tau12, 2, cfg, Source::Itself, true).unwrap();
        let rhs = apply(&ctx, Morphism::Tau02, 2, cfg, Source::D, false).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn relator_boundary_is_empty() {
        let ctx = ab();
        let out = relator_text(&ctx, "four_term_beta2", &["a".into(), "b".into()]).unwrap();
        assert!(out.ends_with("boundary:\nshape F⊗F^×\n"), "{out}");
    }
}
