//! Quadricell symbols `e^{s_t}` encoded as `4·edge + 2·side + end`.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Left = 0,
    Right = 1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    /// Lower end, written `+`.
    Plus = 0,
    /// Upper end, written `−`.
    Minus = 1,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'l',
            Side::Right => 'r',
        }
    }
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Plus => End::Minus,
            End::Minus => End::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            End::Plus => '+',
            End::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadricell(pub u32);

impl Quadricell {
    pub fn new(edge: usize, side: Side, end: End) -> Self {
        Quadricell((4 * edge + 2 * side as usize + end as usize) as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn edge(self) -> usize {
        (self.0 >> 2) as usize
    }

    pub fn side(self) -> Side {
        if self.0 & 2 == 0 {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn end(self) -> End {
        if self.0 & 1 == 0 {
            End::Plus
        } else {
            End::Minus
        }
    }

    /// Flips the side.
    pub fn alpha(self) -> Self {
        Quadricell(self.0 ^ 2)
    }

    /// Flips the end.
    pub fn beta(self) -> Self {
        Quadricell(self.0 ^ 1)
    }

    /// Flips side and end.
    pub fn gamma(self) -> Self {
        Quadricell(self.0 ^ 3)
    }

    /// Superscript name such as `3^{r_+}` using the given edge labels.
    pub fn display<'a, S: AsRef<str>>(self, labels: &'a [S]) -> impl fmt::Display + 'a {
        QuadricellName { q: self, label: labels[self.edge()].as_ref() }
    }
}

struct QuadricellName<'a> {
    q: Quadricell,
    label: &'a str,
}

impl fmt::Display for QuadricellName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{{}_{}}}", self.label, self.q.side().letter(), self.q.end().symbol())
    }
}

/// Parses names like `3^{r_+}`, `3^{l-}` or `3r+`.
pub fn parse_quadricell<S: AsRef<str>>(text: &str, labels: &[S]) -> Option<Quadricell> {
    let cleaned: String = text.chars().filter(|c| !"^{}_ ".contains(*c)).collect();
    let mut chars = cleaned.chars();
    let end = match chars.next_back()? {
        '+' => End::Plus,
        '-' | '−' => End::Minus,
        _ => return None,
    };
    let side = match chars.next_back()? {
        'l' => Side::Left,
        'r' => Side::Right,
        _ => return None,
    };
    let label: String = chars.collect();
    let edge = labels.iter().position(|l| l.as_ref() == label)?;
    Some(Quadricell::new(edge, side, end))
}
