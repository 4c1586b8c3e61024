//! Flag-value parsing: angle lists, state and spinor tokens, rational
//! probabilities, and the statistics-tree mini-language.

use num_traits::ToPrimitive;

use spinstat::hilbert::{basis_minus, basis_plus, spinor, Ket};
use spinstat::statistics::{StatKind, StatisticsTree};
use spinstat::Rational;

pub type CliResult<T> = Result<T, String>;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Canonicalizes one angle to `[0, 2π)`, converting from degrees first
/// when requested.
pub fn angle(value: f64, degrees: bool) -> f64 {
    let radians = if degrees { value.to_radians() } else { value };
    radians.rem_euclid(TAU)
}

pub fn f64_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse '{}' as a number", tok.trim()))
        })
        .collect()
}

pub fn angle_list(text: &str, degrees: bool) -> CliResult<Vec<f64>> {
    Ok(f64_list(text)?
        .into_iter()
        .map(|v| angle(v, degrees))
        .collect())
}

/// Parses `p/q` or a decimal into an exact rational.
pub fn rational(text: &str) -> CliResult<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad rational numerator '{num}'"))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad rational denominator '{den}'"))?;
        if d == 0 {
            return Err("rational denominator must be nonzero".into());
        }
        return Ok(Rational::new(n.into(), d.into()));
    }
    // decimal: digits with an optional fractional part become p / 10^k
    let negative = text.starts_with('-');
    let unsigned = text.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("cannot parse '{text}' as a rational"));
    }
    let numer: i128 = digits
        .parse()
        .map_err(|_| format!("rational '{text}' has too many digits"))?;
    let denom = 10i128.pow(frac_part.len() as u32);
    let mut value = Rational::new(numer.into(), denom.into());
    if negative {
        value = -value;
    }
    Ok(value)
}

pub fn rational_list(text: &str) -> CliResult<Vec<Rational>> {
    text.split(',').map(rational).collect()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// One state token: `+`, `-`, `t:<angle>` (spinor at that measurement
/// angle, using the run's spin constant), or `v:a:b:...` for an explicit
/// real vector.
pub fn part_token(token: &str, c: f64, degrees: bool) -> CliResult<Ket<f64>> {
    let token = token.trim();
    match token {
        "+" => return Ok(basis_plus()),
        "-" => return Ok(basis_minus()),
        _ => {}
    }
    if let Some(rest) = token.strip_prefix("t:") {
        let theta: f64 = rest
            .parse()
            .map_err(|_| format!("cannot parse angle in '{token}'"))?;
        return Ok(spinor(angle(theta, degrees), c));
    }
    if let Some(rest) = token.strip_prefix("v:") {
        let amps = rest
            .split(':')
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| format!("cannot parse component '{v}' in '{token}'"))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        return Ket::single_real(&amps).map_err(|e| e.to_string());
    }
    Err(format!(
        "unknown state token '{token}' (expected +, -, t:<angle>, or v:a:b:...)"
    ))
}

pub fn part_list(text: &str, c: f64, degrees: bool) -> CliResult<Vec<Ket<f64>>> {
    text.split(',')
        .map(|tok| part_token(tok, c, degrees))
        .collect()
}

/// Statistics-tree grammar: `tree := node ('x' node)*`,
/// `node := ('a'|'s') INT | ('a'|'s') INT 'o' '(' tree ')'`.
/// Particles are numbered left to right from 0.
pub fn statistics_tree(text: &str) -> CliResult<StatisticsTree> {
    let mut parser = TreeParser {
        chars: text.trim().chars().collect(),
        pos: 0,
        next_particle: 0,
    };
    let tree = parser.tree()?;
    if parser.pos != parser.chars.len() {
        return Err(format!(
            "unexpected trailing input at position {} in '{text}'",
            parser.pos
        ));
    }
    Ok(tree)
}

struct TreeParser {
    chars: Vec<char>,
    pos: usize,
    next_particle: usize,
}

impl TreeParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn tree(&mut self) -> CliResult<StatisticsTree> {
        let mut nodes = vec![self.node()?];
        while self.peek() == Some('x') {
            self.bump();
            nodes.push(self.node()?);
        }
        Ok(if nodes.len() == 1 {
            nodes.into_iter().next().unwrap()
        } else {
            StatisticsTree::Product(nodes)
        })
    }

    fn node(&mut self) -> CliResult<StatisticsTree> {
        let kind = match self.bump() {
            Some('a') => StatKind::Fermi,
            Some('s') => StatKind::Bose,
            other => return Err(format!("expected 'a' or 's', found {other:?}")),
        };
        let mut digits = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        let count: usize = digits
            .parse()
            .map_err(|_| "expected a block size after the statistics kind".to_string())?;
        if count == 0 {
            return Err("block size must be at least 1".into());
        }
        if self.peek() == Some('o') {
            self.bump();
            if self.bump() != Some('(') {
                return Err("expected '(' after 'o'".into());
            }
            let inner = self.tree()?;
            if self.bump() != Some(')') {
                return Err("expected ')'".into());
            }
            let children = match inner {
                StatisticsTree::Product(children) => children,
                single => vec![single],
            };
            if children.len() != count {
                return Err(format!(
                    "exchange arity {count} does not match {} child blocks",
                    children.len()
                ));
            }
            return Ok(StatisticsTree::Exchange { kind, children });
        }
        let particles: Vec<usize> = (self.next_particle..self.next_particle + count).collect();
        self.next_particle += count;
        Ok(StatisticsTree::Leaf { kind, particles })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_both_forms() {
        assert_eq!(rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(rational("0.25").unwrap(), Rational::new(1.into(), 4.into()));
        assert_eq!(
            rational("-1/2").unwrap(),
            Rational::new((-1).into(), 2.into())
        );
        assert!(rational("x").is_err());
        assert!(rational("1/0").is_err());
    }

    #[test]
    fn tree_grammar_round_trips_the_canonical_examples() {
        let t = statistics_tree("a2xa3").unwrap();
        assert_eq!(
            t,
            StatisticsTree::Product(vec![
                StatisticsTree::a(vec![0, 1]),
                StatisticsTree::a(vec![2, 3, 4])
            ])
        );
        let t = statistics_tree("s3o(a2xa2xa2)").unwrap();
        match t {
            StatisticsTree::Exchange { kind, children } => {
                assert_eq!(kind, StatKind::Bose);
                assert_eq!(children.len(), 3);
            }
            _ => panic!("expected exchange"),
        }
        assert!(statistics_tree("s2o(a2xa2xa2)").is_err());
        assert!(statistics_tree("q3").is_err());
    }

    #[test]
    fn angles_canonicalize() {
        assert!((angle(-std::f64::consts::PI, false) - std::f64::consts::PI).abs() < 1e-12);
        assert!((angle(180.0, true) - std::f64::consts::PI).abs() < 1e-12);
    }
}
