//! Text formats for profiles and lotteries.
//!
//! Profile grammar, one agent per line:
//!
//! ```text
//! <agent-label>: name (('>' | '~') name)*
//! ```
//!
//! `~` ties alternatives within a tier, `>` separates tiers, and whitespace
//! around separators is ignored. The first line fixes the alternative set;
//! every later line must cover exactly the same set. Lottery grammar:
//! whitespace-separated `name:p` entries where `p` is an integer or
//! `int/int`; omitted alternatives get probability zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::model::{
    rational_str, AlternativeId, Lottery, PreferenceProfile, Rational, WeakOrder,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown alternative '{name}'")]
    UnknownAlternative { line: usize, name: String },

    #[error("line {line}: duplicate alternative '{name}' in one order")]
    DuplicateAlternative { line: usize, name: String },

    #[error("line {line}: order for agent '{agent}' is missing alternative '{name}'")]
    MissingAlternative {
        line: usize,
        agent: String,
        name: String,
    },

    #[error("negative probability {value} for alternative '{name}'")]
    NegativeProbability { name: String, value: String },

    #[error("probabilities sum to {sum}, expected 1")]
    BadProbabilitySum { sum: String },

    #[error("empty input: expected at least one agent line")]
    EmptyProfile,
}

/// One parsed token with its 1-based column.
struct Token {
    text: String,
    column: usize,
}

/// Splits an order line body into name tokens and separator tokens.
fn tokenize_order(body: &str, line_no: usize, offset: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (idx, ch) in body.char_indices() {
        match ch {
            '>' | '~' => {
                if !current.is_empty() {
                    tokens.push(Token {
                        text: std::mem::take(&mut current),
                        column: offset + start + 1,
                    });
                }
                tokens.push(Token {
                    text: ch.to_string(),
                    column: offset + idx + 1,
                });
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(Token {
                        text: std::mem::take(&mut current),
                        column: offset + start + 1,
                    });
                }
            }
            ':' => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: offset + idx + 1,
                    message: "unexpected ':' in preference order".into(),
                });
            }
            _ => {
                if current.is_empty() {
                    start = idx;
                }
                current.push(ch);
            }
        }
    }
    if !current.is_empty() {
        tokens.push(Token {
            text: current,
            column: offset + start + 1,
        });
    }
    Ok(tokens)
}

/// A single agent line: tiers of names, best tier first.
fn parse_order_line(
    line: &str,
    line_no: usize,
) -> Result<(String, Vec<Vec<String>>), ParseError> {
    let colon = line.find(':').ok_or_else(|| ParseError::Syntax {
        line: line_no,
        column: line.len() + 1,
        message: "expected '<agent-label>:' before the order".into(),
    })?;
    let label = line[..colon].trim().to_string();
    if label.is_empty() {
        return Err(ParseError::Syntax {
            line: line_no,
            column: 1,
            message: "empty agent label".into(),
        });
    }
    let body = &line[colon + 1..];
    let tokens = tokenize_order(body, line_no, colon + 1)?;
    if tokens.is_empty() {
        return Err(ParseError::Syntax {
            line: line_no,
            column: colon + 2,
            message: "expected at least one alternative name".into(),
        });
    }

    let mut tiers: Vec<Vec<String>> = vec![Vec::new()];
    let mut expect_name = true;
    for token in &tokens {
        match token.text.as_str() {
            ">" | "~" if expect_name => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: token.column,
                    message: format!("expected an alternative name, found '{}'", token.text),
                });
            }
            ">" => {
                tiers.push(Vec::new());
                expect_name = true;
            }
            "~" => {
                expect_name = true;
            }
            name if expect_name => {
                tiers.last_mut().unwrap().push(name.to_string());
                expect_name = false;
            }
            name => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: token.column,
                    message: format!("expected '>' or '~' before '{name}'"),
                });
            }
        }
    }
    if expect_name {
        let last = tokens.last().unwrap();
        return Err(ParseError::Syntax {
            line: line_no,
            column: last.column,
            message: "order ends with a dangling separator".into(),
        });
    }
    Ok((label, tiers))
}

/// Parses a preference profile. The first agent line fixes the alternative
/// set (names indexed in order of first appearance); later lines must rank
/// exactly the same alternatives.
pub fn parse_profile(text: &str) -> Result<PreferenceProfile, ParseError> {
    let mut names: Vec<String> = Vec::new();
    let mut orders: Vec<WeakOrder> = Vec::new();
    let mut first = true;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (label, tiers) = parse_order_line(raw, line_no)?;

        if first {
            for tier in &tiers {
                for name in tier {
                    if names.contains(name) {
                        return Err(ParseError::DuplicateAlternative {
                            line: line_no,
                            name: name.clone(),
                        });
                    }
                    names.push(name.clone());
                }
            }
            first = false;
        }

        let mut seen = vec![false; names.len()];
        let mut id_tiers: Vec<Vec<AlternativeId>> = Vec::with_capacity(tiers.len());
        for tier in &tiers {
            let mut ids = Vec::with_capacity(tier.len());
            for name in tier {
                let id = names.iter().position(|n| n == name).ok_or_else(|| {
                    ParseError::UnknownAlternative {
                        line: line_no,
                        name: name.clone(),
                    }
                })?;
                if seen[id] {
                    return Err(ParseError::DuplicateAlternative {
                        line: line_no,
                        name: name.clone(),
                    });
                }
                seen[id] = true;
                ids.push(AlternativeId(id));
            }
            id_tiers.push(ids);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(ParseError::MissingAlternative {
                line: line_no,
                agent: label,
                name: names[missing].clone(),
            });
        }
        let order = WeakOrder::from_tiers(id_tiers, names.len())
            .expect("validated tiers must form a partition");
        orders.push(order);
    }

    if orders.is_empty() {
        return Err(ParseError::EmptyProfile);
    }
    Ok(PreferenceProfile::new(orders, names).expect("parsed profile is well-formed"))
}

/// Parses a rational literal: `int` or `int/int`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

/// Parses a lottery over the profile's alternatives. Omitted alternatives
/// get probability zero; the total must be exactly 1.
pub fn parse_lottery(text: &str, profile: &PreferenceProfile) -> Result<Lottery, ParseError> {
    let mut probs = vec![Rational::zero(); profile.m()];
    let mut assigned = vec![false; profile.m()];
    for (tok_idx, token) in text.split_whitespace().enumerate() {
        let (name, value) = token.split_once(':').ok_or_else(|| ParseError::Syntax {
            line: 1,
            column: tok_idx + 1,
            message: format!("expected 'name:probability', found '{token}'"),
        })?;
        let id = profile
            .index_of(name)
            .ok_or_else(|| ParseError::UnknownAlternative {
                line: 1,
                name: name.to_string(),
            })?;
        if assigned[id.0] {
            return Err(ParseError::DuplicateAlternative {
                line: 1,
                name: name.to_string(),
            });
        }
        let p = parse_rational(value).ok_or_else(|| ParseError::Syntax {
            line: 1,
            column: tok_idx + 1,
            message: format!("invalid probability '{value}'"),
        })?;
        if p.is_negative() {
            return Err(ParseError::NegativeProbability {
                name: name.to_string(),
                value: rational_str(&p),
            });
        }
        probs[id.0] = p;
        assigned[id.0] = true;
    }
    let sum: Rational = probs.iter().sum();
    if !sum.is_one() {
        return Err(ParseError::BadProbabilitySum {
            sum: rational_str(&sum),
        });
    }
    Ok(Lottery::new(probs).expect("validated lottery"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rat;

    #[test]
    fn parses_strict_two_agent_profile() {
        let p = parse_profile("1: a > b\n2: b > a").unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.m(), 2);
        assert_eq!(p.names(), &["a".to_string(), "b".to_string()]);
        let a = p.index_of("a").unwrap();
        let b = p.index_of("b").unwrap();
        assert!(p.order(0).strictly_prefers(a, b));
        assert!(p.order(1).strictly_prefers(b, a));
    }

    #[test]
    fn parses_tied_profile() {
        let p = parse_profile("1: a ~ b > c\n2: a ~ b > c").unwrap();
        assert_eq!(p.m(), 3);
        let a = p.index_of("a").unwrap();
        let b = p.index_of("b").unwrap();
        for i in 0..2 {
            assert!(p.order(i).indifferent(a, b));
        }
    }

    #[test]
    fn missing_alternative_is_reported() {
        let err = parse_profile("1: a > b\n2: a").unwrap_err();
        assert_eq!(
            err,
            ParseError::MissingAlternative {
                line: 2,
                agent: "2".into(),
                name: "b".into()
            }
        );
    }

    #[test]
    fn unknown_and_duplicate_names_are_reported() {
        assert!(matches!(
            parse_profile("1: a > b\n2: a > c").unwrap_err(),
            ParseError::UnknownAlternative { line: 2, .. }
        ));
        assert!(matches!(
            parse_profile("1: a > b ~ a").unwrap_err(),
            ParseError::DuplicateAlternative { line: 1, .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_profile("1: a > > b").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 8);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let p1 = parse_profile("1: a>b~c\n2:   c  >  a ~ b").unwrap();
        let p2 = parse_profile("1: a > b ~ c\n2: c > a ~ b").unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn lottery_examples() {
        let p = parse_profile("1: a > b\n2: b > a").unwrap();
        let l = parse_lottery("a:1/2 b:1/2", &p).unwrap();
        assert_eq!(l.prob(p.index_of("a").unwrap()), &rat(1, 2));

        let l = parse_lottery("a:1", &p).unwrap();
        assert!(l.is_degenerate());

        assert!(matches!(
            parse_lottery("a:1/3 b:1/3", &p).unwrap_err(),
            ParseError::BadProbabilitySum { .. }
        ));
        assert!(matches!(
            parse_lottery("a:-1/2 b:3/2", &p).unwrap_err(),
            ParseError::NegativeProbability { .. }
        ));
        assert!(matches!(
            parse_lottery("z:1", &p).unwrap_err(),
            ParseError::UnknownAlternative { .. }
        ));
    }

    #[test]
    fn profile_round_trip() {
        let text = "1: a ~ b > c\n2: c > a ~ b\n3: b > a > c\n";
        let p = parse_profile(text).unwrap();
        let reparsed = parse_profile(&p.to_text()).unwrap();
        assert_eq!(p, reparsed);
    }
}
