//! Behavioral golden model of the case-study ALU.
//!
//! The model is combinational and stateless: [`AluVector::evaluate`] maps one
//! stimulus (operation, operands) to a result word plus the four status flags.
//! Width is a parameter (default 16) so the model can be checked exhaustively
//! against an independent oracle at small widths.

use std::fmt;

use thiserror::Error;

/// Bit width of the ALU datapath, restricted to 4..=64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Width(u8);

impl Width {
    pub const MIN_BITS: u8 = 4;
    pub const MAX_BITS: u8 = 64;

    pub fn new(bits: u8) -> Result<Self, AluError> {
        if (Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            Ok(Width(bits))
        } else {
            Err(AluError::InvalidWidth { bits })
        }
    }

    pub fn bits(self) -> u32 {
        u32::from(self.0)
    }

    /// All-ones word at this width.
    pub fn mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    /// 2^w as an unbounded value.
    pub fn modulus(self) -> u128 {
        1u128 << self.0
    }

    /// Word with only the sign bit set (2^(w-1)).
    pub fn sign_bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }

    /// Hex digits needed to print a word at this width.
    pub fn hex_digits(self) -> usize {
        usize::from(self.0).div_ceil(4)
    }
}

impl Default for Width {
    fn default() -> Self {
        Width(16)
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AluError {
    #[error("width {bits} out of range (supported: 4..=64 bits)")]
    InvalidWidth { bits: u8 },
    #[error("operand {value:#x} does not fit in {width} bits")]
    OperandOutOfRange { value: u64, width: Width },
}

/// The eight supported operations with their 4-bit opcodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum AluOp {
    Add = 0,
    Sub = 1,
    And = 2,
    Or = 3,
    Xor = 4,
    Not = 5,
    Shl = 6,
    Shr = 7,
}

impl AluOp {
    pub const ALL: [AluOp; 8] = [
        AluOp::Add,
        AluOp::Sub,
        AluOp::And,
        AluOp::Or,
        AluOp::Xor,
        AluOp::Not,
        AluOp::Shl,
        AluOp::Shr,
    ];

    /// 4-bit opcode used in testbenches and VCD traces.
    pub fn encoding(self) -> u8 {
        self as u8
    }

    pub fn from_encoding(code: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.encoding() == code)
    }

    /// Upper-case mnemonic, the spelling used in step phrases and prompts.
    pub fn name(self) -> &'static str {
        match self {
            AluOp::Add => "ADD",
            AluOp::Sub => "SUB",
            AluOp::And => "AND",
            AluOp::Or => "OR",
            AluOp::Xor => "XOR",
            AluOp::Not => "NOT",
            AluOp::Shl => "SHL",
            AluOp::Shr => "SHR",
        }
    }

    /// Case-insensitive mnemonic lookup.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for AluOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four single-bit status outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    Carry,
    Zero,
    Overflow,
    Negative,
}

impl Flag {
    pub const ALL: [Flag; 4] = [Flag::Carry, Flag::Zero, Flag::Overflow, Flag::Negative];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Carry => "carry",
            Flag::Zero => "zero",
            Flag::Overflow => "overflow",
            Flag::Negative => "negative",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|fl| fl.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Status flag outputs of one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlagSet {
    /// Unsigned overflow on ADD, no-borrow on SUB, last bit shifted out on shifts.
    pub carry: bool,
    /// Result is the zero word.
    pub zero: bool,
    /// Two's complement (signed) overflow; only ADD and SUB can set it.
    pub overflow: bool,
    /// Sign bit of the result.
    pub negative: bool,
}

impl FlagSet {
    pub fn get(&self, flag: Flag) -> bool {
        match flag {
            Flag::Carry => self.carry,
            Flag::Zero => self.zero,
            Flag::Overflow => self.overflow,
            Flag::Negative => self.negative,
        }
    }
}

/// One stimulus: operation plus both operand words at a fixed width.
///
/// `b` is ignored by NOT and supplies the shift amount (mod width) for
/// SHL/SHR.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AluVector {
    op: AluOp,
    a: u64,
    b: u64,
    width: Width,
}

impl AluVector {
    pub fn new(op: AluOp, a: u64, b: u64, width: Width) -> Result<Self, AluError> {
        for value in [a, b] {
            if value > width.mask() {
                return Err(AluError::OperandOutOfRange { value, width });
            }
        }
        Ok(AluVector { op, a, b, width })
    }

    pub fn op(&self) -> AluOp {
        self.op
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// Compute the result word and status flags for this stimulus.
    pub fn evaluate(&self) -> AluResponse {
        let w = self.width;
        let mask = w.mask();
        let (a, b) = (self.a, self.b);

        let mut carry = false;
        let mut overflow = false;
        let result = match self.op {
            AluOp::Add => {
                let sum = u128::from(a) + u128::from(b);
                carry = sum >= w.modulus();
                let result = (sum as u64) & mask;
                let (sa, sb, sr) = (signed_view(a, w), signed_view(b, w), signed_view(result, w));
                overflow = (sa < 0) == (sb < 0) && (sr < 0) != (sa < 0);
                result
            }
            AluOp::Sub => {
                // No-borrow convention: carry set when a >= b.
                carry = a >= b;
                let result = a.wrapping_sub(b) & mask;
                let (sa, sb, sr) = (signed_view(a, w), signed_view(b, w), signed_view(result, w));
                overflow = (sa < 0) != (sb < 0) && (sr < 0) == (sb < 0);
                result
            }
            AluOp::And => a & b,
            AluOp::Or => a | b,
            AluOp::Xor => a ^ b,
            AluOp::Not => !a & mask,
            AluOp::Shl => {
                let s = (b % u64::from(w.bits())) as u32;
                if s > 0 {
                    carry = (a >> (w.bits() - s)) & 1 == 1;
                }
                (a << s) & mask
            }
            AluOp::Shr => {
                let s = (b % u64::from(w.bits())) as u32;
                if s > 0 {
                    carry = (a >> (s - 1)) & 1 == 1;
                }
                a >> s
            }
        };

        AluResponse {
            result,
            flags: FlagSet {
                carry,
                zero: result == 0,
                overflow,
                negative: result & w.sign_bit() != 0,
            },
        }
    }
}

/// Result word plus flags from one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AluResponse {
    pub result: u64,
    pub flags: FlagSet,
}

/// Reinterpret a word as a two's complement signed integer.
///
/// Returns `word` when it is below the sign boundary, `word - 2^width`
/// otherwise.
pub fn signed_view(word: u64, width: Width) -> i64 {
    let shift = 64 - width.bits();
    ((word << shift) as i64) >> shift
}
