//! The closed vocabulary of named triangle points.

use std::fmt;
use std::str::FromStr;

macro_rules! labels {
    ($($variant:ident => $name:literal, $pretty:literal;)*) => {
        /// A named characteristic point of a triangle.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum PointLabel {
            $($variant,)*
        }

        impl PointLabel {
            pub const ALL: &'static [PointLabel] = &[$(PointLabel::$variant,)*];

            /// Identifier used in the KB text and the catalog.
            pub fn name(self) -> &'static str {
                match self {
                    $(PointLabel::$variant => $name,)*
                }
            }

            /// Name with TeX-ish subscripts (`H_a`, `H'_{BC}`), used in prose.
            pub fn pretty(self) -> &'static str {
                match self {
                    $(PointLabel::$variant => $pretty,)*
                }
            }
        }

        impl FromStr for PointLabel {
            type Err = UnknownLabel;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(PointLabel::$variant),)*
                    _ => Err(UnknownLabel(s.to_string())),
                }
            }
        }
    };
}

labels! {
    A => "A", "A";
    B => "B", "B";
    C => "C", "C";
    O => "O", "O";
    Ma => "Ma", "M_a";
    Mb => "Mb", "M_b";
    Mc => "Mc", "M_c";
    G => "G", "G";
    Ha => "Ha", "H_a";
    Hb => "Hb", "H_b";
    Hc => "Hc", "H_c";
    H => "H", "H";
    Ta => "Ta", "T_a";
    Tb => "Tb", "T_b";
    Tc => "Tc", "T_c";
    I => "I", "I";
    TaExt => "T'a", "T'_a";
    TbExt => "T'b", "T'_b";
    TcExt => "T'c", "T'_c";
    HBc => "H'BC", "H'_{BC}";
    HAc => "H'AC", "H'_{AC}";
    HAb => "H'AB", "H'_{AB}";
    Pa => "Pa", "P_a";
    Pb => "Pb", "P_b";
    Pc => "Pc", "P_c";
    Na => "Na", "N_a";
    Nb => "Nb", "N_b";
    Nc => "Nc", "N_c";
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown point label `{0}`")]
pub struct UnknownLabel(pub String);

impl PointLabel {
    pub fn index(self) -> usize {
        self as usize
    }

    /// The sixteen points Wernick problems are drawn from.
    pub fn is_wernick(self) -> bool {
        self.index() < 16
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, PointLabel::A | PointLabel::B | PointLabel::C)
    }

    /// Identifier safe for GCLC/SVG ids (`T'a` becomes `Tpa`).
    pub fn ident(self) -> String {
        self.name().replace('\'', "p")
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
