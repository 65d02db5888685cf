//! Transcription choice and the table of known discrepancies in the printed
//! derivation. Each entry records what is printed, what the re-derivation
//! from the radial equation gives, and which variant the shooting oracle
//! selected.

use serde::{Deserialize, Serialize};

/// Which set of coefficient and eigenvalue formulas to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transcription {
    /// Formulas re-derived from the decoupled radial equations.
    #[default]
    Rederived,
    /// Formulas exactly as printed.
    PaperVerbatim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selected {
    Rederived,
    PaperVerbatim,
    /// Printed form confirmed; both variants coincide.
    Confirmed,
}

impl Selected {
    pub fn label(self) -> &'static str {
        match self {
            Selected::Rederived => "rederived",
            Selected::PaperVerbatim => "paper_verbatim",
            Selected::Confirmed => "confirmed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub location: &'static str,
    pub printed: &'static str,
    pub rederived: &'static str,
    pub selected: Selected,
    pub evidence: &'static str,
}

pub static ERRATA: &[Erratum] = &[
    Erratum {
        id: "hypergeometric-representation",
        location: "Eq. 29",
        printed: "D[1 - sigma coth(alpha r)]^2 = (D1 + D2 e^{-2 alpha r})^2 / (1 - e^{-2 alpha r})^2",
        rederived: "(D1 + D2 z)^2/(1-z)^2 = D[coth(alpha r) - sigma]^2; the coth form equals (D1 - D2 z)^2/(1-z)^2",
        selected: Selected::Rederived,
        evidence: "the (D1 + D2 z) form is the one used by every later equation; it is taken as the definition",
    },
    Erratum {
        id: "hypergeometric-pseudospin-xi2",
        location: "Eqs. 32-33",
        printed: "xi2 = 2 beta^2 [D1 D2 mu - eps - 2 alpha^2 kappa(kappa-1)]",
        rederived: "xi2 = 2 beta^2 [D1 D2 mu + eps - 2 alpha^2 kappa(kappa-1)]",
        selected: Selected::Rederived,
        evidence: "only +eps makes Eq. 34 a rearrangement of the general quantization condition; verbatim xi2 fails the round trip",
    },
    Erratum {
        id: "hypergeometric-pseudospin-constant",
        location: "Eq. 34",
        printed: "... = -n(n+1) - 1/2",
        rederived: "... = -n(n+1) - 1/2",
        selected: Selected::Confirmed,
        evidence: "right-hand constant is exact; oracle agrees with the printed equation",
    },
    Erratum {
        id: "hypergeometric-jacobi-parameter",
        location: "Eq. 35",
        printed: "P_n^(2 beta sqrt(eps mu D1^2), ...)",
        rederived: "P_n^(2 beta sqrt(eps - mu D1^2), ...)",
        selected: Selected::Rederived,
        evidence: "verbatim parameter fails the radial ODE residual; rederived passes",
    },
    Erratum {
        id: "laguerre-limit-quantization",
        location: "Eq. 27",
        printed: "(2n+1)(sqrt(a9) - a3 sqrt(a8)) - 2 sqrt(a8 a9) + a5",
        rederived: "alpha3 -> 0 limit of Eq. 21: (2n+1)(sqrt(a9) + a3 sqrt(a8)) + 2 sqrt(a8 a9) - a5",
        selected: Selected::Rederived,
        evidence: "printed form selects the z^{-sqrt(xi3)} branch, which is not normalizable",
    },
    Erratum {
        id: "morse-pseudospin-sign",
        location: "Eqs. 43-44",
        printed: "xi1 = 4 beta^2 V1 M, xi2 = 4 beta^2 V2 M, xi3 = 4 beta^2 (E^2 - m^2 - E(m + C))",
        rederived: "xi1 = -4 beta^2 V1 M, xi2 = -4 beta^2 V2 M, xi3 = 4 beta^2 M (m + E), M = m - E + C",
        selected: Selected::Rederived,
        evidence: "bracket sign reversed relative to the lower-component equation",
    },
    Erratum {
        id: "morse-pseudospin-eigenvalue",
        location: "Eq. 45",
        printed: "E^2 - E(mu + Sigma) - mu^2 = (1/16 beta^2)(2n + 1 - (2 beta V2/sqrt V1) sqrt(mu - E + Sigma))^2",
        rederived: "2 beta sqrt(M(m + E)) = (beta V2/sqrt V1) sqrt(-M) - n - 1/2",
        selected: Selected::Rederived,
        evidence: "rederived roots agree with the oracle; verbatim roots do not",
    },
    Erratum {
        id: "rest-mass-symbol",
        location: "Sections IV.B-C",
        printed: "mu (undefined in these sections)",
        rederived: "mu := m",
        selected: Selected::Rederived,
        evidence: "dimensional analysis; expansion of (m - E + C)(m + E)",
    },
    Erratum {
        id: "morse-spin-eigenvalue",
        location: "Eq. 48",
        printed: "m^2 - E^2 + Delta(E - m) = (1/16 beta^2)(2n + 1 - (2 beta V2/sqrt V1) sqrt(E + m - Delta))^2",
        rederived: "2 beta sqrt(N(m - E)) = (beta V2/sqrt V1) sqrt(N) - n - 1/2",
        selected: Selected::Rederived,
        evidence: "squared form admits spurious roots from the wrong sign branch",
    },
    Erratum {
        id: "poschl-teller-pseudospin-sign",
        location: "Eqs. 51-52",
        printed: "xi1 = xi3 = -beta^2 M (m + E), xi2 = -2 beta^2 M (m + E + 2 V0)",
        rederived: "xi1 = xi3 = beta^2 M (m + E), xi2 = 2 beta^2 M (m + E + 2 V0)",
        selected: Selected::Rederived,
        evidence: "bracket sign reversed relative to the lower-component equation",
    },
    Erratum {
        id: "poschl-teller-pseudospin-eigenvalue",
        location: "Eq. 53",
        printed: "E^2 - m^2 - C(m + E) = (1/4)((2n+1) alpha + sqrt(4 V0 M + alpha^2))^2",
        rederived: "sqrt(M(m + E)) = (sqrt(alpha^2 - 4 M V0) - (2n+1) alpha)/2",
        selected: Selected::Rederived,
        evidence: "z in (-1, 0) needs the -sqrt(alpha9) branch; printed form is the divergent branch",
    },
    Erratum {
        id: "poschl-teller-spin-eigenvalue",
        location: "Eq. 56",
        printed: "E^2 + m^2 - Delta(m - E) = (1/4)((2n+1) alpha + sqrt(4 V0 N + alpha^2))^2",
        rederived: "sqrt(N(m - E)) = (sqrt(alpha^2 + 4 N V0) - (2n+1) alpha)/2",
        selected: Selected::Rederived,
        evidence: "branch as for Eq. 53; printed +E^2 should be -E^2",
    },
    Erratum {
        id: "poschl-teller-spinor-exponents",
        location: "Eqs. 54, 57",
        printed: "(1-z)^{(1/2)[1 + sqrt(1 + 16 V0 beta^2 M)]}, P_n^(.., +sqrt(1 + 16 V0 beta^2 M))",
        rederived: "(1-z)^{(1/2)[1 - sqrt(1 - 16 V0 beta^2 M)]}, P_n^(.., -sqrt(1 - 16 V0 beta^2 M)) (N, +16 V0 beta^2 N for spin)",
        selected: Selected::Rederived,
        evidence: "follows from the decaying branch; verbatim form fails the radial ODE residual",
    },
];

pub fn lookup(id: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.id == id)
}
