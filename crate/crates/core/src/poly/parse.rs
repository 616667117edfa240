//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! coeff  := int | int '/' uint
//! ```
//!
//! Whitespace is ignored. Positions in errors are byte offsets into the input.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Other(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer `{}`", s),
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Other(c) => format!("`{}`", c),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Vec<(usize, Tok)> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                s.push(bytes[i].1);
                i += 1;
            }
            out.push((pos, Tok::Int(s)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                s.push(bytes[i].1);
                i += 1;
            }
            out.push((pos, Tok::Ident(s)));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => Tok::Other(other),
        };
        out.push((pos, t));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    declared: Option<&'a [String]>,
    vars: Vec<String>,
}

type Term = (Rational, Vec<(usize, u32)>);

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail(&self, expected: &str) -> PolyError {
        // A decimal point right after an integer is the common way to write a
        // non-rational coefficient; report it as such.
        if let Tok::Other('.') = self.peek() {
            return PolyError::NonRationalCoefficient {
                position: self.pos(),
                reason: "decimal coefficients are not accepted; write a fraction".into(),
            };
        }
        PolyError::SyntaxError {
            position: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn var_index(&mut self, name: &str, position: usize) -> Result<usize, PolyError> {
        if let Some(declared) = self.declared {
            return declared
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| PolyError::UnknownVariable {
                    name: name.into(),
                    position,
                });
        }
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(i);
        }
        self.vars.push(name.into());
        Ok(self.vars.len() - 1)
    }

    fn expr(&mut self) -> Result<Vec<Term>, PolyError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (mut c, f) = self.term()?;
            if negate {
                c = -c;
            }
            terms.push((c, f));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => return Ok(terms),
                _ => return Err(self.fail("`+`, `-`, `*` or end of input")),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Term, PolyError> {
        let mut factors = Vec::new();
        let coeff = match self.peek().clone() {
            Tok::Int(_) => self.coeff()?,
            Tok::Ident(_) => {
                factors.push(self.factor()?);
                Rational::one()
            }
            _ => return Err(self.fail("coefficient or variable")),
        };
        while let Tok::Star = self.peek() {
            self.bump();
            match self.peek() {
                Tok::Ident(_) => factors.push(self.factor()?),
                Tok::Int(_) => {
                    return Err(PolyError::SyntaxError {
                        position: self.pos(),
                        expected: "variable".into(),
                        found: self.peek().describe(),
                    })
                }
                _ => return Err(self.fail("variable")),
            }
        }
        Ok((coeff, factors))
    }

    fn coeff(&mut self) -> Result<Rational, PolyError> {
        let (_, tok) = self.bump();
        let Tok::Int(num) = tok else {
            unreachable!("coeff called on a non-integer token")
        };
        let num: BigInt = num.parse().expect("lexer yields digits only");
        if let Tok::Slash = self.peek() {
            self.bump();
            let den_pos = self.pos();
            let Tok::Int(den) = self.peek().clone() else {
                return Err(self.fail("unsigned integer denominator"));
            };
            self.bump();
            let den: BigInt = den.parse().expect("lexer yields digits only");
            if den.is_zero() {
                return Err(PolyError::NonRationalCoefficient {
                    position: den_pos,
                    reason: "zero denominator".into(),
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<(usize, u32), PolyError> {
        let (pos, tok) = self.bump();
        let Tok::Ident(name) = tok else {
            unreachable!("factor called on a non-identifier token")
        };
        let var = self.var_index(&name, pos)?;
        if let Tok::Caret = self.peek() {
            self.bump();
            let epos = self.pos();
            match self.peek().clone() {
                Tok::Int(e) => {
                    self.bump();
                    let e: u32 = e.parse().map_err(|_| PolyError::SyntaxError {
                        position: epos,
                        expected: "exponent fitting in 32 bits".into(),
                        found: format!("integer `{}`", e),
                    })?;
                    Ok((var, e))
                }
                _ => Err(self.fail("unsigned integer exponent")),
            }
        } else {
            Ok((var, 1))
        }
    }
}

/// Parses with variables ordered by first appearance.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    parse_inner(text, None)
}

/// Parses with a declared variable list; any other identifier is an error.
pub fn parse_polynomial_with(text: &str, variables: &[String]) -> Result<Polynomial, PolyError> {
    parse_inner(text, Some(variables))
}

fn parse_inner(text: &str, declared: Option<&[String]>) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        toks: lex(text),
        at: 0,
        declared,
        vars: Vec::new(),
    };
    let terms = p.expr()?;
    let vars = match declared {
        Some(d) if !d.is_empty() => d.to_vec(),
        Some(_) => Polynomial::default_vars(1),
        None if p.vars.is_empty() => Polynomial::default_vars(1),
        None => p.vars,
    };
    let n = vars.len();
    let mut poly = Polynomial::zero(vars);
    for (c, factors) in terms {
        let mut e = vec![0u32; n];
        for (v, k) in factors {
            e[v] += k;
        }
        poly.add_term(Monomial::new(e), c);
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cusp() {
        let f = parse_polynomial("x^3 + y^2").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&Monomial::new(vec![3, 0])), q(1, 1));
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 2])), q(1, 1));
    }

    #[test]
    fn like_terms_combine() {
        let f = parse_polynomial("2*x*y + x*y").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coefficient(&Monomial::new(vec![1, 1])), q(3, 1));
    }

    #[test]
    fn three_variables() {
        let f = parse_polynomial("x^3 + y^3 + z^3 + x*y*z").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn fractions_and_signs() {
        let f = parse_polynomial("-3/6*x^2 - y + 0*z").unwrap();
        assert_eq!(f.vars(), &["x", "y", "z"]);
        assert_eq!(f.coefficient(&Monomial::new(vec![2, 0, 0])), q(-1, 2));
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 1, 0])), q(-1, 1));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn repeated_factor_multiplies() {
        let f = parse_polynomial("x*x^2*y").unwrap();
        assert_eq!(f.coefficient(&Monomial::new(vec![3, 1])), q(1, 1));
    }

    #[test]
    fn declared_order() {
        let vars: Vec<String> = ["z", "y", "x"].iter().map(|s| s.to_string()).collect();
        let f = parse_polynomial_with("x^3 + y^2", &vars).unwrap();
        assert_eq!(f.coefficient(&Monomial::new(vec![0, 0, 3])), q(1, 1));
        let err = parse_polynomial_with("w^2", &vars).unwrap_err();
        assert_eq!(
            err,
            PolyError::UnknownVariable {
                name: "w".into(),
                position: 0
            }
        );
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_polynomial("x^3 + + y").unwrap_err() {
            PolyError::SyntaxError { position, .. } => assert_eq!(position, 6),
            e => panic!("unexpected {e:?}"),
        }
        match parse_polynomial("x^").unwrap_err() {
            PolyError::SyntaxError { position, .. } => assert_eq!(position, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_polynomial("x y").unwrap_err(),
            PolyError::SyntaxError { position: 2, .. }
        ));
        assert!(matches!(
            parse_polynomial("x*2").unwrap_err(),
            PolyError::SyntaxError { position: 2, .. }
        ));
        assert!(matches!(
            parse_polynomial("").unwrap_err(),
            PolyError::SyntaxError { position: 0, .. }
        ));
    }

    #[test]
    fn non_rational_coefficients() {
        assert!(matches!(
            parse_polynomial("1.5*x").unwrap_err(),
            PolyError::NonRationalCoefficient { position: 1, .. }
        ));
        assert!(matches!(
            parse_polynomial("1/0*x").unwrap_err(),
            PolyError::NonRationalCoefficient { position: 2, .. }
        ));
    }

    #[test]
    fn print_then_parse_is_identity() {
        let f = parse_polynomial("7/2*x*y^3 - x^5 + 2*y + 3").unwrap();
        let g = parse_polynomial_with(&f.to_string(), f.vars()).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_string(), f.to_string());
    }
}
