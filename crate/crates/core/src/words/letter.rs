use std::fmt;

use super::WordError;

/// Size of the basic alphabet `x_1 .. x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    n: u32,
}

impl Alphabet {
    pub fn new(n: u32) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        if n > i32::MAX as u32 / 2 {
            return Err(WordError::AlphabetTooLarge(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    pub fn contains(self, letter: GroupLetter) -> bool {
        letter.index() <= self.n
    }

    /// Group letters in deg-lex order: `x_1 < x_1^-1 < x_2 < ... < x_n^-1`.
    pub fn group_letters(self) -> impl Iterator<Item = GroupLetter> {
        (0..2 * self.n).map(GroupLetter::from_order_key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A letter `x_i^{±1}` of the group alphabet, packed as a nonzero `i32`
/// (`+i` for `x_i`, `-i` for `x_i^-1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupLetter(i32);

impl GroupLetter {
    pub fn new(index: u32, sign: Sign) -> Self {
        assert!(index >= 1 && index <= i32::MAX as u32, "letter index out of range");
        match sign {
            Sign::Plus => Self(index as i32),
            Sign::Minus => Self(-(index as i32)),
        }
    }

    #[inline]
    pub fn pos(index: u32) -> Self {
        Self::new(index, Sign::Plus)
    }

    #[inline]
    pub fn neg(index: u32) -> Self {
        Self::new(index, Sign::Minus)
    }

    /// Unpack from the signed code; panics on zero.
    #[inline]
    pub fn from_code(code: i32) -> Self {
        assert!(code != 0, "zero is not a group letter");
        Self(code)
    }

    #[inline]
    pub fn code(self) -> i32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn sign(self) -> Sign {
        if self.0 > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Self(-self.0)
    }

    /// Position in the deg-lex letter order, starting at 0 for `x_1`.
    #[inline]
    pub fn order_key(self) -> u32 {
        2 * (self.index() - 1) + u32::from(self.0 < 0)
    }

    #[inline]
    pub fn from_order_key(key: u32) -> Self {
        let index = key / 2 + 1;
        if key.is_multiple_of(2) {
            Self::pos(index)
        } else {
            Self::neg(index)
        }
    }
}

impl fmt::Debug for GroupLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Sign::Plus => write!(f, "x{}", self.index()),
            Sign::Minus => write!(f, "x{}^-1", self.index()),
        }
    }
}
