use super::Formula;

/// Prints a formula using core connectives only.
///
/// The single exception is `⊤`, which prints as `top` because its underlying
/// atom cannot be written in the input syntax.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn is_tight(f: &Formula) -> bool {
    matches!(f, Formula::Atom(_)) || f.is_top()
}

fn write_formula(f: &Formula, out: &mut String) {
    if f.is_top() {
        out.push_str("top");
        return;
    }
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Not(inner) => {
            out.push('!');
            write_operand(inner, out);
        }
        Formula::Delta(inner) => {
            out.push_str("D ");
            write_operand(inner, out);
        }
        Formula::Nec(inner) => {
            out.push_str("[] ");
            write_operand(inner, out);
        }
        Formula::And(l, r) => {
            write_formula(l, out);
            out.push_str(" & ");
            if matches!(r.as_ref(), Formula::And(..)) && !r.is_top() {
                out.push('(');
                write_formula(r, out);
                out.push(')');
            } else {
                write_formula(r, out);
            }
        }
    }
}

fn write_operand(f: &Formula, out: &mut String) {
    if is_tight(f) {
        write_formula(f, out);
    } else {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    }
}

/// Prints a formula with sugar restored where the core shape allows it:
/// `bot`, `Nb`, `|`, `->` and `<->`. Parsing the output gives back `f`.
///
/// Meant for people; [`render`] is the canonical form.
pub fn pretty(f: &Formula) -> String {
    let mut out = String::new();
    write_pretty(f, 0, &mut out);
    out
}

enum View<'a> {
    Leaf(&'a str),
    Unary(&'static str, &'a Formula),
    Binary(u8, &'static str, &'a Formula, &'a Formula),
}

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn view(f: &Formula) -> View<'_> {
    if f.is_top() {
        return View::Leaf("top");
    }
    if let (Some((a, b)), Formula::And(l, r)) = (f.as_biconditional(), f) {
        if !l.is_top() && !r.is_top() {
            return View::Binary(IFF, " <-> ", a, b);
        }
    }
    match f {
        Formula::Atom(name) => View::Leaf(name),
        Formula::Not(inner) => match inner.as_ref() {
            g if g.is_top() => View::Leaf("bot"),
            Formula::Delta(x) => View::Unary("Nb ", x),
            // `⊤` is itself a negation; never split it.
            Formula::And(l, r) if l.is_top() || r.is_top() => View::Unary("!", inner),
            Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                // `¬(¬a ∧ ¬b)` reads as `a ∨ b`, except when `¬a` is itself
                // a disjunction or implication; then `¬a → b` is clearer.
                (Formula::Not(a), Formula::Not(b)) if !matches!(a.as_ref(), Formula::And(..)) => {
                    View::Binary(OR, " | ", a, b)
                }
                (a, Formula::Not(b)) => View::Binary(IMP, " -> ", a, b),
                _ => View::Unary("!", inner),
            },
            _ => View::Unary("!", inner),
        },
        Formula::Delta(x) => View::Unary("D ", x),
        Formula::Nec(x) => View::Unary("[] ", x),
        Formula::And(l, r) => View::Binary(AND, " & ", l, r),
    }
}

type Writer<'a> = Box<dyn Fn(&mut String) + 'a>;

fn write_pretty(f: &Formula, min: u8, out: &mut String) {
    let (prec, body): (u8, Writer) = match view(f) {
        View::Leaf(text) => (UNARY + 1, Box::new(move |o: &mut String| o.push_str(text))),
        View::Unary(op, x) => (
            UNARY,
            Box::new(move |o: &mut String| {
                o.push_str(op);
                write_pretty(x, UNARY, o);
            }),
        ),
        View::Binary(prec, op, l, r) => {
            // `->` and `<->` associate to the right, `|` and `&` to the left.
            let (lmin, rmin) = if prec <= IMP { (prec + 1, prec) } else { (prec, prec + 1) };
            (
                prec,
                Box::new(move |o: &mut String| {
                    write_pretty(l, lmin, o);
                    o.push_str(op);
                    write_pretty(r, rmin, o);
                }),
            )
        }
    };
    if prec < min {
        out.push('(');
        body(out);
        out.push(')');
    } else {
        body(out);
    }
}
