use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trider_core::DEFAULT_MAX_VIOLATIONS;

/// Exact cohomology, extensions and deformations of 3-Lie algebras with a derivation.
#[derive(Debug, Parser)]
#[command(name = "trider", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Verb {
    /// Check the fundamental identity, and optionally a derivation, representation or module.
    Validate,
    /// Basis of the derivation algebra.
    DerSpace,
    /// Semidirect product pair on L ⊕ M.
    Semidirect,
    /// Betti number and representatives of the pair complex.
    Cohomology,
    /// Cocycle and coboundary test; with two cochains, compare their classes.
    CocycleCheck,
    /// Central extension from a 2-cocycle (ψ, χ).
    ExtensionBuild,
    /// Cocycle (ψ, χ) of a central extension with respect to a section.
    ExtensionExtract,
    /// Whether two 2-cocycles give isomorphic extensions.
    ExtensionClassify,
    /// Extend (φ_L, φ_M) to a derivation of a central extension.
    DerExtend,
    /// Check the deformation equations order by order.
    DeformValidate,
    /// Obstruction to extending a deformation by one order.
    DeformObstruct,
    /// Next-order terms of a deformation, if any.
    DeformExtend,
    /// Remove leading terms by formal automorphisms.
    DeformTrivialize,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Validate => "validate",
            Verb::DerSpace => "der-space",
            Verb::Semidirect => "semidirect",
            Verb::Cohomology => "cohomology",
            Verb::CocycleCheck => "cocycle-check",
            Verb::ExtensionBuild => "extension-build",
            Verb::ExtensionExtract => "extension-extract",
            Verb::ExtensionClassify => "extension-classify",
            Verb::DerExtend => "der-extend",
            Verb::DeformValidate => "deform-validate",
            Verb::DeformObstruct => "deform-obstruct",
            Verb::DeformExtend => "deform-extend",
            Verb::DeformTrivialize => "deform-trivialize",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, value_name = "FILE")]
    pub algebra: Option<PathBuf>,

    /// Derivation of L, or φ_L for der-extend.
    #[arg(long, global = true, value_name = "FILE")]
    pub phi: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub rep: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub phim: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub pair: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub dermod: Option<PathBuf>,

    /// Pair cochain; give twice where two are compared.
    #[arg(long, global = true, value_name = "FILE")]
    pub cochain: Vec<PathBuf>,

    #[arg(long, global = true)]
    pub degree: Option<usize>,

    #[arg(long, global = true, value_name = "FILE")]
    pub section: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub deformation: Option<PathBuf>,

    #[arg(long, global = true, value_name = "FILE")]
    pub extension: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VIOLATIONS)]
    pub max_violations: usize,

    #[arg(long, global = true, default_value_t = 16)]
    pub max_steps: usize,
}
