//! Parser for the diagram spec language.
//!
//! ```text
//! spec    := form [ "cross" set ]
//! form    := NAME "(" args ")"
//!          | "custom" TYPE RANK [ "black" set ] [ "arrows" pairset ]
//! set     := "{" INT { "," INT } "}" | "{}"
//! pairset := "{" pair { "," pair } "}" ;  pair := "(" INT "," INT ")"
//! NAME    := su | sl_r | sl_h | so | so_star | sp_r | sp | compact | complex
//! ```
//!
//! `TYPE` is a single letter (`custom A 3`) or a compound with explicit
//! component ranks (`custom A1+A1 2`). Parse errors carry the byte position
//! and the expected tokens.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::catalog::{self, Family, Params};
use crate::dynkin::{DynkinGraph, SimpleType};
use crate::error::{Error, Result};
use crate::parabolic::CrossedDiagram;
use crate::render::parse_type_string;
use crate::satake::SatakeDiagram;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push(Spanned {
                    token: Token::LParen,
                    pos: i,
                });
                i += 1;
            }
            ')' => {
                out.push(Spanned {
                    token: Token::RParen,
                    pos: i,
                });
                i += 1;
            }
            '{' => {
                out.push(Spanned {
                    token: Token::LBrace,
                    pos: i,
                });
                i += 1;
            }
            '}' => {
                out.push(Spanned {
                    token: Token::RBrace,
                    pos: i,
                });
                i += 1;
            }
            ',' => {
                out.push(Spanned {
                    token: Token::Comma,
                    pos: i,
                });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: usize = text[start..i].parse().map_err(|_| Error::Parse {
                    position: start,
                    expected: "integer".into(),
                })?;
                out.push(Spanned {
                    token: Token::Int(value),
                    pos: start,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_ascii_alphanumeric() || c == '_' || c == '+' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    token: Token::Ident(text[start..i].to_string()),
                    pos: start,
                });
            }
            _ => {
                return Err(Error::Parse {
                    position: i,
                    expected: format!("token (found `{c}`)"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    cursor: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|s| &s.token)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|s| s.pos)
            .unwrap_or(self.len)
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            expected: expected.to_string(),
        })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|s| s.token.clone());
        self.cursor += 1;
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&token) {
            self.cursor += 1;
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn int(&mut self, what: &str) -> Result<usize> {
        match self.peek() {
            Some(Token::Int(v)) => {
                let v = *v;
                self.cursor += 1;
                Ok(v)
            }
            _ => self.fail(what),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.cursor += 1;
                Ok(s)
            }
            _ => self.fail(what),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        if let Some(Token::Ident(s)) = self.peek() {
            if s == word {
                self.cursor += 1;
                return true;
            }
        }
        false
    }

    fn set(&mut self) -> Result<BTreeSet<usize>> {
        self.expect(Token::LBrace, "`{`")?;
        let mut out = BTreeSet::new();
        if self.peek() == Some(&Token::RBrace) {
            self.cursor += 1;
            return Ok(out);
        }
        loop {
            out.insert(self.int("integer")?);
            match self.bump() {
                Some(Token::Comma) => continue,
                Some(Token::RBrace) => return Ok(out),
                _ => {
                    self.cursor -= 1;
                    return self.fail("`,` or `}`");
                }
            }
        }
    }

    fn pairs(&mut self) -> Result<Vec<(usize, usize)>> {
        self.expect(Token::LBrace, "`{`")?;
        let mut out = Vec::new();
        if self.peek() == Some(&Token::RBrace) {
            self.cursor += 1;
            return Ok(out);
        }
        loop {
            self.expect(Token::LParen, "`(`")?;
            let a = self.int("integer")?;
            self.expect(Token::Comma, "`,`")?;
            let b = self.int("integer")?;
            self.expect(Token::RParen, "`)`")?;
            out.push((a, b));
            match self.bump() {
                Some(Token::Comma) => continue,
                Some(Token::RBrace) => return Ok(out),
                _ => {
                    self.cursor -= 1;
                    return self.fail("`,` or `}`");
                }
            }
        }
    }
}

/// Parses a spec string into a validated cross-marked diagram.
pub fn parse_spec(text: &str) -> Result<CrossedDiagram> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        cursor: 0,
        len: text.len(),
    };
    let name_pos = p.pos();
    let name = p.ident("form name")?;

    let satake = if name == "custom" {
        let ty_pos = p.pos();
        let ty = p.ident("diagram type")?;
        let rank = p.int("rank")?;
        let parts = parse_type_string(&ty, rank).map_err(|_| Error::Parse {
            position: ty_pos,
            expected: "diagram type such as `A` or `A1+A1`".into(),
        })?;
        let graph = DynkinGraph::from_components(&parts)?;
        if graph.rank() != rank {
            return Err(Error::OutOfRange(format!(
                "declared rank {rank} does not match type {ty} (rank {})",
                graph.rank()
            )));
        }
        let black = if p.keyword("black") {
            p.set()?
        } else {
            BTreeSet::new()
        };
        let arrows = if p.keyword("arrows") {
            p.pairs()?
        } else {
            Vec::new()
        };
        SatakeDiagram::new(graph, black, arrows)?
    } else {
        let family = Family::from_token(&name).ok_or(Error::Parse {
            position: name_pos,
            expected: "one of su, sl_r, sl_h, so, so_star, sp_r, sp, compact, complex, custom"
                .into(),
        })?;
        p.expect(Token::LParen, "`(`")?;
        let params = match family {
            Family::Su | Family::So | Family::Sp => {
                let a = p.int("integer")?;
                p.expect(Token::Comma, "`,`")?;
                let b = p.int("integer")?;
                Params::Pq(a, b)
            }
            Family::SlR | Family::SlH | Family::SoStar | Family::SpR => {
                Params::N(p.int("integer")?)
            }
            Family::Compact | Family::Complex => {
                let pos = p.pos();
                let letter = p.ident("type letter")?;
                let ty = (letter.len() == 1)
                    .then(|| SimpleType::from_letter(letter.chars().next().unwrap()))
                    .flatten()
                    .ok_or(Error::Parse {
                        position: pos,
                        expected: "type letter A..G".into(),
                    })?;
                p.expect(Token::Comma, "`,`")?;
                Params::Typed(ty, p.int("rank")?)
            }
        };
        p.expect(Token::RParen, "`)`")?;
        catalog::lookup(family, &params)?
    };

    let crosses = if p.keyword("cross") {
        p.set()?
    } else {
        BTreeSet::new()
    };
    if p.peek().is_some() {
        return p.fail("end of input");
    }
    CrossedDiagram::new(Arc::new(satake), crosses)
}

/// Parses a standalone node set such as `{1,2}`.
pub fn parse_node_set(text: &str) -> Result<BTreeSet<usize>> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        cursor: 0,
        len: text.len(),
    };
    let set = p.set()?;
    if p.peek().is_some() {
        return p.fail("end of input");
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_catalog_form() {
        let cd = parse_spec("su(1,3) cross {1,2}").unwrap();
        assert_eq!(cd.satake().black(), &BTreeSet::from([2]));
        assert_eq!(cd.satake().arrows(), &[(1, 3)]);
        assert_eq!(cd.crosses(), &BTreeSet::from([1, 2]));
    }

    #[test]
    fn custom_spelling_matches_the_named_form() {
        let named = parse_spec("su(1,3) cross {1,2}").unwrap();
        let custom = parse_spec("custom A 3 black {2} arrows {(1,3)} cross {1,2}").unwrap();
        assert_eq!(named, custom);
    }

    #[test]
    fn custom_compound_types() {
        let cd = parse_spec("custom A1+A1 2 arrows {(1,2)} cross {1}").unwrap();
        assert_eq!(cd.satake().graph().type_string(), "A1+A1");
        assert_eq!(cd.satake().sigma_components().len(), 1);
    }

    #[test]
    fn out_of_range_cross_is_reported() {
        assert_eq!(
            parse_spec("su(1,3) cross {9}"),
            Err(Error::NodeOutOfRange(9, 3))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_spec("su(1,3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_spec("zu(1,3)") {
            Err(Error::Parse { position, expected }) => {
                assert_eq!(position, 0);
                assert!(expected.contains("su"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_spec("su(1,3) cross {1} trailing").is_err());
    }

    #[test]
    fn node_sets_parse_alone() {
        assert_eq!(parse_node_set("{1,2}").unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(parse_node_set("{}").unwrap(), BTreeSet::new());
        assert!(parse_node_set("{1,").is_err());
    }

    #[test]
    fn exceptional_names_are_not_in_the_grammar() {
        assert!(matches!(parse_spec("e6(2)"), Err(Error::Parse { .. })));
        // They are reachable through the custom spelling instead.
        let cd = parse_spec("custom E 6 arrows {(1,6),(3,5)} cross {4}").unwrap();
        assert_eq!(cd.satake().rank(), 6);
    }
}
