//! Monomial orders induced by a total order on the variables.

use super::Monomial;
use crate::grid::Vertex;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// How the variables `x_v` are totally ordered (ascending).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VariableOrder {
    /// `x_{i,j} < x_{k,l}` iff `i < k`, or `i = k` and `j < l`.
    ColumnMajor,
    /// `x_{i,j} < x_{k,l}` iff `j < l`, or `j = l` and `i < k`.
    RowMajor,
    /// An explicit ascending list. Variables missing from the list sort above every
    /// listed one, row-major among themselves.
    Explicit(Vec<Vertex>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderScheme {
    Lex,
    GradedLex,
    GradedRevLex,
}

impl OrderScheme {
    pub fn name(self) -> &'static str {
        match self {
            OrderScheme::Lex => "lex",
            OrderScheme::GradedLex => "grlex",
            OrderScheme::GradedRevLex => "grevlex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialOrder {
    pub variables: VariableOrder,
    pub scheme: OrderScheme,
    #[serde(skip)]
    ranks: Option<HashMap<Vertex, usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::column_major(OrderScheme::GradedRevLex)
    }
}

impl MonomialOrder {
    pub fn column_major(scheme: OrderScheme) -> Self {
        MonomialOrder {
            variables: VariableOrder::ColumnMajor,
            scheme,
            ranks: None,
        }
    }

    pub fn row_major(scheme: OrderScheme) -> Self {
        MonomialOrder {
            variables: VariableOrder::RowMajor,
            scheme,
            ranks: None,
        }
    }

    /// `ascending` lists the variables from smallest to largest.
    pub fn explicit(ascending: Vec<Vertex>, scheme: OrderScheme) -> Self {
        let ranks = ascending.iter().enumerate().map(|(r, v)| (*v, r)).collect();
        MonomialOrder {
            variables: VariableOrder::Explicit(ascending),
            scheme,
            ranks: Some(ranks),
        }
    }

    pub fn with_scheme(&self, scheme: OrderScheme) -> Self {
        MonomialOrder {
            scheme,
            ..self.clone()
        }
    }

    /// Compares two variables under the variable order.
    pub fn var_cmp(&self, a: Vertex, b: Vertex) -> Ordering {
        match &self.variables {
            VariableOrder::ColumnMajor => (a.i, a.j).cmp(&(b.i, b.j)),
            VariableOrder::RowMajor => (a.j, a.i).cmp(&(b.j, b.i)),
            VariableOrder::Explicit(_) => {
                let ranks = self.ranks.as_ref().expect("explicit order has ranks");
                match (ranks.get(&a), ranks.get(&b)) {
                    (Some(x), Some(y)) => x.cmp(y),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => a.cmp(&b),
                }
            }
        }
    }

    /// Sorts variables ascending.
    pub fn sort_ascending(&self, vars: &mut [Vertex]) {
        vars.sort_by(|a, b| self.var_cmp(*a, *b));
    }

    pub fn descriptor(&self) -> String {
        let vars = match &self.variables {
            VariableOrder::ColumnMajor => "column-major".to_string(),
            VariableOrder::RowMajor => "row-major".to_string(),
            VariableOrder::Explicit(list) => {
                let names: Vec<String> = list.iter().map(|v| format!("x[{},{}]", v.i, v.j)).collect();
                format!("explicit({})", names.join("<"))
            }
        };
        format!("{}({})", self.scheme.name(), vars)
    }

    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        compare(self, m1, m2)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// Compares monomials.
///
/// Graded schemes compare total degree first. Lex then looks at the largest variable
/// whose exponents differ and prefers the larger exponent; graded reverse lex looks at
/// the smallest such variable and prefers the smaller exponent.
pub fn compare(order: &MonomialOrder, m1: &Monomial, m2: &Monomial) -> Ordering {
    if order.scheme != OrderScheme::Lex {
        let d = m1.degree().cmp(&m2.degree());
        if d != Ordering::Equal {
            return d;
        }
    }
    let mut pivot: Option<(Vertex, u32, u32)> = None;
    let mut consider = |v: Vertex, e1: u32, e2: u32| {
        if e1 == e2 {
            return;
        }
        let better = match pivot {
            None => true,
            Some((w, _, _)) => {
                let c = order.var_cmp(v, w);
                match order.scheme {
                    OrderScheme::GradedRevLex => c == Ordering::Less,
                    _ => c == Ordering::Greater,
                }
            }
        };
        if better {
            pivot = Some((v, e1, e2));
        }
    };
    let (a, b) = (&m1.exps, &m2.exps);
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        match (a.get(x), b.get(y)) {
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Less => {
                    consider(va, ea, 0);
                    x += 1;
                }
                Ordering::Greater => {
                    consider(vb, 0, eb);
                    y += 1;
                }
                Ordering::Equal => {
                    consider(va, ea, eb);
                    x += 1;
                    y += 1;
                }
            },
            (Some(&(va, ea)), None) => {
                consider(va, ea, 0);
                x += 1;
            }
            (None, Some(&(vb, eb))) => {
                consider(vb, 0, eb);
                y += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    match pivot {
        None => Ordering::Equal,
        Some((_, e1, e2)) => match order.scheme {
            OrderScheme::GradedRevLex => e2.cmp(&e1),
            _ => e1.cmp(&e2),
        },
    }
}
