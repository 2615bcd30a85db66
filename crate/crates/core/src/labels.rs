//! The seven diagnosis classes and their fixed order.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Lesion diagnosis label. The declaration order is the canonical order
/// used everywhere: confusion-matrix axes, CSV columns, score vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Mel,
    Nv,
    Bcc,
    Akiec,
    Bkl,
    Df,
    Vasc,
}

impl Label {
    pub const ALL: [Label; 7] = [
        Label::Mel,
        Label::Nv,
        Label::Bcc,
        Label::Akiec,
        Label::Bkl,
        Label::Df,
        Label::Vasc,
    ];

    pub fn index(self) -> usize {
        Label::ALL.iter().position(|&l| l == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Mel => "MEL",
            Label::Nv => "NV",
            Label::Bcc => "BCC",
            Label::Akiec => "AKIEC",
            Label::Bkl => "BKL",
            Label::Df => "DF",
            Label::Vasc => "VASC",
        }
    }

    pub fn parse(s: &str) -> Result<Label, Error> {
        Label::ALL
            .iter()
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class label '{s}'")))
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_roundtrip() {
        let names: Vec<&str> = Label::ALL.iter().map(|l| l.name()).collect();
        assert_eq!(names, ["MEL", "NV", "BCC", "AKIEC", "BKL", "DF", "VASC"]);
        for (i, l) in Label::ALL.iter().enumerate() {
            assert_eq!(l.index(), i);
            assert_eq!(Label::parse(l.name()).unwrap(), *l);
        }
        assert!(Label::parse("mel").is_err());
    }
}
