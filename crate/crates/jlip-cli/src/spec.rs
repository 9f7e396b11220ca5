//! Textual specs for domains, points, and maps.
//!
//! Domains: `ball2`, `half3`, `sector:angle=0.7853981633974483`, and
//! punctured variants like `ball2:puncture=0,0` (several punctures are
//! separated by `;`).
//!
//! Maps: `identity:<domain>`, `sigma:a=0.5,0`, `cayley:h2b` / `cayley:b2h`,
//! `inversion:dim=2`, `power:k=3`, `poly:m=2,q=1:0;0.5:0`,
//! `series:0:0;0.5:0;0.5:0` (coefficients a_0, a_1, ... as `re:im`),
//! `expexample`, and `conj34:a=0.5,0` (alias `punctured-auto`).
//!
//! Every parse failure is an [`Error::InvalidParameter`], which the binary
//! maps onto the usage exit code.

use jlip::holo::{UnitSeries, ZeroFreePolynomial};
use jlip::{Domain64, Error, MapUnderTest, Result, Vector64};
use num_complex::Complex;

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("bad {what} {s:?}: {e}")))?;
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "{what} must be finite, got {s:?}"
        )));
    }
    Ok(v)
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("bad {what} {s:?}: {e}")))
}

/// Comma-separated coordinates, e.g. `0.5,0` or `0,0,0.25`.
pub fn parse_point(s: &str) -> Result<Vector64> {
    let coords = s
        .split(',')
        .map(|p| parse_f64(p, "coordinate"))
        .collect::<Result<Vec<f64>>>()?;
    if coords.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "points need at least two coordinates, got {s:?}"
        )));
    }
    Ok(Vector64::new(coords))
}

/// `;`-separated points.
fn parse_points(s: &str) -> Result<Vec<Vector64>> {
    s.split(';').map(parse_point).collect()
}

/// `re:im` pairs separated by `;`, e.g. `1:0;0.5:-0.25`.
fn parse_coeffs(s: &str) -> Result<Vec<Complex<f64>>> {
    s.split(';')
        .map(|pair| {
            let (re, im) = pair.split_once(':').ok_or_else(|| {
                Error::InvalidParameter(format!("coefficient {pair:?} is not of the form re:im"))
            })?;
            Ok(Complex::new(
                parse_f64(re, "coefficient")?,
                parse_f64(im, "coefficient")?,
            ))
        })
        .collect()
}

/// The value of a single mandatory `key=value` option.
fn expect_option<'a>(spec: &str, tail: Option<&'a str>, key: &str) -> Result<&'a str> {
    let tail = tail.ok_or_else(|| {
        Error::InvalidParameter(format!("{spec:?} needs a {key}=... option"))
    })?;
    tail.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "expected {key}=... after the colon in {spec:?}, got {tail:?}"
            ))
        })
}

fn parse_dim(s: &str, spec: &str) -> Result<usize> {
    let dim: usize = s
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("bad dimension in {spec:?}: {e}")))?;
    if !(2..=16).contains(&dim) {
        return Err(Error::InvalidParameter(format!(
            "dimension must lie in 2..=16, got {dim}"
        )));
    }
    Ok(dim)
}

pub fn parse_domain(spec: &str) -> Result<Domain64> {
    let (base, tail) = match spec.split_once(':') {
        Some((b, t)) => (b, Some(t)),
        None => (spec, None),
    };
    if base == "sector" {
        let angle = parse_f64(expect_option(spec, tail, "angle")?, "sector angle")?;
        return Domain64::sector(angle);
    }
    if let Some(d) = base.strip_prefix("ball") {
        let dim = parse_dim(d, spec)?;
        return match tail {
            None => Ok(Domain64::unit_ball(dim)),
            Some(_) => {
                let punctures = parse_points(expect_option(spec, tail, "puncture")?)?;
                Domain64::punctured_ball(dim, punctures)
            }
        };
    }
    if let Some(d) = base.strip_prefix("half") {
        let dim = parse_dim(d, spec)?;
        return match tail {
            None => Ok(Domain64::half_space(dim)),
            Some(_) => {
                let punctures = parse_points(expect_option(spec, tail, "puncture")?)?;
                Domain64::punctured_half_space(dim, punctures)
            }
        };
    }
    Err(Error::InvalidParameter(format!(
        "unknown domain {spec:?}; try ball2, half3, sector:angle=0.8, or ball2:puncture=0,0"
    )))
}

pub fn parse_map(spec: &str) -> Result<MapUnderTest<f64>> {
    let (base, tail) = match spec.split_once(':') {
        Some((b, t)) => (b, Some(t)),
        None => (spec, None),
    };
    match base {
        "identity" => {
            let domain = tail.ok_or_else(|| {
                Error::InvalidParameter(format!("{spec:?} needs a domain, e.g. identity:ball2"))
            })?;
            MapUnderTest::identity(parse_domain(domain)?)
        }
        "sigma" => {
            let a = parse_point(expect_option(spec, tail, "a")?)?;
            MapUnderTest::ball_automorphism_map(&a, None)
        }
        "cayley" => match tail {
            Some("h2b") => MapUnderTest::cayley_half_to_disk(),
            Some("b2h") => MapUnderTest::cayley_disk_to_half(),
            _ => Err(Error::InvalidParameter(format!(
                "cayley direction must be h2b or b2h, got {spec:?}"
            ))),
        },
        "inversion" => {
            let dim = parse_dim(expect_option(spec, tail, "dim")?, spec)?;
            MapUnderTest::halfspace_inversion_map(&Vector64::zero(dim), 1.0)
        }
        "power" => {
            let k = parse_u32(expect_option(spec, tail, "k")?, "power exponent")?;
            MapUnderTest::power_sector(k)
        }
        "poly" => {
            let tail = tail.ok_or_else(|| {
                Error::InvalidParameter(format!("{spec:?} needs m=...,q=... options"))
            })?;
            let (m_part, q_part) = tail.split_once(',').ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "poly needs both options, e.g. poly:m=2,q=1:0;0.5:0, got {spec:?}"
                ))
            })?;
            let m = parse_u32(expect_option(spec, Some(m_part), "m")?, "monomial degree")?;
            let coeffs = parse_coeffs(expect_option(spec, Some(q_part), "q")?)?;
            let q = ZeroFreePolynomial::new(coeffs)?;
            MapUnderTest::punctured_power_polynomial(m, &q)
        }
        "series" => {
            let coeffs = parse_coeffs(tail.ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "{spec:?} needs coefficients, e.g. series:0:0;1:0"
                ))
            })?)?;
            MapUnderTest::bounded_series(UnitSeries::new(coeffs)?)
        }
        "expexample" => MapUnderTest::exp_example(),
        "conj34" | "punctured-auto" => {
            let a = parse_point(expect_option(spec, tail, "a")?)?;
            MapUnderTest::punctured_automorphism(&a)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown map {spec:?}; known kinds: identity, sigma, cayley, inversion, power, poly, series, expexample, conj34"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_and_coefficients_parse() {
        assert_eq!(parse_point("0.5,0").unwrap().coords(), &[0.5, 0.0]);
        assert_eq!(
            parse_coeffs("1:0;0.5:-0.25").unwrap(),
            vec![Complex::new(1.0, 0.0), Complex::new(0.5, -0.25)]
        );
        assert!(parse_point("0.5").is_err());
        assert!(parse_point("0.5,nope").is_err());
        assert!(parse_point("inf,0").is_err());
    }

    #[test]
    fn domains_parse() {
        assert_eq!(parse_domain("ball2").unwrap().dim(), 2);
        assert_eq!(parse_domain("half3").unwrap().dim(), 3);
        assert_eq!(parse_domain("sector:angle=0.7").unwrap().dim(), 2);
        let punctured = parse_domain("ball2:puncture=0,0;0.5,0").unwrap();
        assert_eq!(punctured.punctures().len(), 2);
        assert!(parse_domain("ball1").is_err());
        assert!(parse_domain("cube2").is_err());
        assert!(parse_domain("sector").is_err());
        assert!(parse_domain("ball2:radius=2").is_err());
    }

    #[test]
    fn maps_parse() {
        for spec in [
            "identity:ball2",
            "sigma:a=0.5,0",
            "cayley:h2b",
            "cayley:b2h",
            "inversion:dim=2",
            "power:k=3",
            "poly:m=2,q=1:0;0.5:0",
            "series:0:0;0.5:0;0.5:0",
            "expexample",
            "conj34:a=0.5,0",
            "punctured-auto:a=0.3,0,0",
        ] {
            assert!(parse_map(spec).is_ok(), "{spec}");
        }
        assert!(parse_map("sigma").is_err());
        assert!(parse_map("cayley:up").is_err());
        assert!(parse_map("rotation:pi").is_err());
        // q(z) = z has a root at the origin, inside the closed disk
        assert!(parse_map("poly:m=1,q=0:0;1:0").is_err());
    }
}
