//! Exact coefficient dumps addressed by object ids.
//!
//! Ids are `kind:key=value:...`:
//!
//! | id | object |
//! |----|--------|
//! | `f:N=3:i=1:j=2[:q=..:t=..]` | `f^{i,j}(x)` at a generic point (default `q=3/2, t=5/3`) |
//! | `g:N=2:k=2:mu=1:nu=1` | `g^{mu,nu}(x)` over `Q(eta)` |
//! | `a:N=3:i=1:beta=4/3` | `a^i_2, a^i_4, ..` |
//! | `char:k=2:j=1` | the Z-algebra character, without its prefactor |
//! | `bernoulli` | `B_1, B_2, ..` |
//! | `zeta` | `zeta(-1), zeta(-3), ..` |
//!
//! Rationals are strings `"num/den"`. Elements of `Q(sqrt p)` are `[a, b]` for
//! `a + b sqrt(p)`, and cyclotomic elements are coefficient vectors in `eta`
//! with `"eta_order": 2N` stated alongside.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{fmt_rat, int, parse_rat, Rat, Scalar, ScalarCtx};
use crate::characters;
use crate::error::{Error, Result};
use crate::structfn::{f_series, g_series};
use crate::zeta;

struct Id<'a> {
    kind: &'a str,
    fields: BTreeMap<&'a str, &'a str>,
}

fn parse_id(id: &str) -> Result<Id<'_>> {
    let mut parts = id.split(':');
    let kind = parts.next().unwrap_or_default();
    let mut fields = BTreeMap::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::Unknown(format!("{id}: expected key=value, got {p:?}")))?;
        fields.insert(k, v);
    }
    Ok(Id { kind, fields })
}

impl Id<'_> {
    fn rat(&self, key: &str) -> Result<Rat> {
        let v = self
            .fields
            .get(key)
            .ok_or_else(|| Error::Unknown(format!("missing field {key:?}")))?;
        parse_rat(v)
    }

    fn rat_or(&self, key: &str, default: &str) -> Result<Rat> {
        parse_rat(self.fields.get(key).copied().unwrap_or(default))
    }

    fn int(&self, key: &str) -> Result<i64> {
        let r = self.rat(key)?;
        if !r.is_integer() {
            return Err(Error::Unknown(format!("{key} must be an integer")));
        }
        r.to_integer()
            .try_into()
            .map_err(|_| Error::Unknown(format!("{key} out of range")))
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.fields.keys().find(|k| !keys.contains(k)) {
            Some(k) => Err(Error::Unknown(format!("unexpected field {k:?} for {}", self.kind))),
            None => Ok(()),
        }
    }
}

/// The rational value of a cyclotomic coefficient vector, if it has no `eta` part.
fn rational_part(v: &Value) -> Option<Value> {
    let coeffs = v.get("coeffs")?.as_array()?;
    if coeffs.iter().skip(1).all(|c| c == "0") {
        Some(coeffs.first().cloned().unwrap_or_else(|| json!("0")))
    } else {
        None
    }
}

fn rats(v: impl IntoIterator<Item = Rat>) -> Value {
    Value::Array(v.into_iter().map(|r| Value::String(fmt_rat(&r))).collect())
}

/// The artifact for `id` through `order`.
pub fn dump_series(id: &str, order: usize) -> Result<Value> {
    let p = parse_id(id)?;
    let body = match p.kind {
        "f" => {
            p.allow(&["N", "i", "j", "q", "t"])?;
            let n = p.int("N")?;
            if n < 1 {
                return Err(Error::Unknown("N must be positive".into()));
            }
            let (q, t) = (p.rat_or("q", "3/2")?, p.rat_or("t", "5/3")?);
            let ctx = ScalarCtx::generic(n as usize, q.clone(), t.clone())?;
            let f = f_series(&ctx, p.int("i")?, p.int("j")?, order)?;
            json!({
                "field": "Q(sqrt p)",
                "p": fmt_rat(&(q.clone() / t.clone())),
                "q": fmt_rat(&q),
                "t": fmt_rat(&t),
                "coefficients": f.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })
        }
        "g" => {
            p.allow(&["N", "k", "mu", "nu"])?;
            let n = p.int("N")?;
            if n < 2 {
                return Err(Error::Unknown("N must be at least 2".into()));
            }
            let g = g_series(n as usize, &p.rat("k")?, p.int("mu")?, p.int("nu")?, order)?;
            let all_rational: Option<Vec<Value>> = g.coeffs().iter().map(|c| rational_part(&c.to_json())).collect();
            json!({
                "field": "Q(eta)",
                "eta_order": 2 * n,
                "coefficients": match all_rational {
                    Some(r) => Value::Array(r),
                    None => Value::Array(g.coeffs().iter().map(Scalar::to_json).collect()),
                },
            })
        }
        "a" => {
            p.allow(&["N", "i", "beta"])?;
            let a = zeta::a_coefficients(p.int("N")?, p.int("i")?, &p.rat("beta")?, order.max(1))?;
            json!({ "field": "Q", "index": "2m, m = 1..", "coefficients": rats(a) })
        }
        "char" => {
            p.allow(&["k", "j"])?;
            let k = p.int("k")?;
            let j = p.rat("j")?;
            let s = characters::dza_sum(k, &j, &int(order as i64), 3)?;
            json!({
                "field": "Q",
                "prefactor_exponent": fmt_rat(&characters::dza_prefactor(k, &j)),
                "terms": s.terms().map(|(e, c)| json!([fmt_rat(&e), fmt_rat(c)])).collect::<Vec<_>>(),
            })
        }
        "bernoulli" => {
            p.allow(&[])?;
            let t = zeta::BernoulliTable::new(order.max(1) as u32)?;
            json!({
                "field": "Q",
                "index": "m = 1..",
                "coefficients": rats((1..=order.max(1) as u32).filter_map(|m| t.get(m).cloned())),
            })
        }
        "zeta" => {
            p.allow(&[])?;
            let z = zeta::ZetaValues::new(order.max(1) as u32)?;
            json!({
                "field": "Q",
                "index": "zeta(1-2m), m = 1..",
                "coefficients": rats((1..=order.max(1) as u32).filter_map(|m| z.at(m).cloned())),
            })
        }
        other => return Err(Error::Unknown(format!("unknown object kind {other:?} in {id:?}"))),
    };
    let mut out = json!({ "id": id, "order": order });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_for_n2() {
        let v = dump_series("g:N=2:k=2:mu=1:nu=1", 5).unwrap();
        assert_eq!(v["coefficients"], json!(["1", "-2", "2", "-2", "2", "-2"]));
        assert_eq!(v["order"], json!(5));
        assert_eq!(v["eta_order"], json!(4));
        let trivial = dump_series("g:N=2:k=2:mu=1:nu=2", 3).unwrap();
        assert_eq!(trivial["coefficients"], json!(["1", "0", "0", "0"]));
    }

    #[test]
    fn bernoulli_numbers() {
        let v = dump_series("bernoulli", 3).unwrap();
        assert_eq!(v["coefficients"], json!(["1/6", "1/30", "1/42"]));
    }

    #[test]
    fn f_leading_terms() {
        // f^{1,1} = 1 + (1-q)(1-1/t)/(1+p) x + .. for N = 2
        let v = dump_series("f:N=2:i=1:j=1", 2).unwrap();
        let (q, t) = (parse_rat("3/2").unwrap(), parse_rat("5/3").unwrap());
        let c1 = (int(1) - &q) * (int(1) - int(1) / &t) / (int(1) + &q / &t);
        assert_eq!(v["coefficients"][0], json!("1"));
        assert_eq!(v["coefficients"][1], json!(fmt_rat(&c1)));
    }

    #[test]
    fn unknown_ids() {
        assert!(matches!(dump_series("h:N=2", 3), Err(Error::Unknown(_))));
        assert!(dump_series("f:N=2:i=1", 3).is_err());
        assert!(dump_series("bernoulli:x=1", 3).is_err());
    }
}
