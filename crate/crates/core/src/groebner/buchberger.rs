
use super::terms::{Ctx, Term, Terms};
use crate::poly::Monomial;

/// A basis element together with its expression in the input generators
/// (`rep` stays empty when tracking is off).
#[derive(Clone, Debug)]
pub(crate) struct Elt {
    pub v: Terms,
    pub rep: Terms,
}

fn lead(e: &Elt) -> &Term {
    &e.v[0]
}

/// Fully reduces `f` modulo the listed basis elements. Tracking data is
/// updated as `rep -= c * m * rep_g` alongside `v -= c * m * g`.
pub(crate) fn reduce(ctx: &Ctx, mut f: Elt, basis: &[&Elt], track: bool) -> Elt {
    let mut done: Terms = Vec::new();
    let mut rest = std::mem::take(&mut f.v);
    let mut start = 0;
    while start < rest.len() {
        let t = &rest[start];
        let hit = basis.iter().find(|g| {
            let l = lead(g);
            l.comp == t.comp && l.mono.divides(&t.mono)
        });
        match hit {
            Some(g) => {
                let l = lead(g);
                let c = ctx.field.div(&t.coeff, &l.coeff).expect("nonzero lead");
                let m = l.mono.quotient_of(&t.mono);
                if track {
                    f.rep = ctx.reps().sub_mul(&f.rep, &c, &m, &g.rep);
                }
                rest = ctx.sub_mul(&rest[start..], &c, &m, &g.v);
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    f.v = done;
    f
}

fn make_monic(ctx: &Ctx, f: Elt, track: bool) -> Elt {
    let (v, inv) = ctx.monic(&f.v);
    let rep = if track { ctx.scale(&f.rep, &inv) } else { f.rep };
    Elt { v, rep }
}

/// S-vector of two monic elements with equal leading component.
pub(crate) fn s_vector(ctx: &Ctx, a: &Elt, b: &Elt, track: bool) -> Elt {
    let (la, lb) = (&lead(a).mono, &lead(b).mono);
    let l = la.lcm(lb);
    let ma = la.quotient_of(&l);
    let mb = lb.quotient_of(&l);
    let minus_one = ctx.field.neg(&ctx.field.one());
    let one = ctx.field.one();
    let v = ctx.sub_mul(&ctx.sub_mul(&[], &minus_one, &ma, &a.v), &one, &mb, &b.v);
    let rep = if track {
        let rc = ctx.reps();
        rc.sub_mul(&rc.sub_mul(&[], &minus_one, &ma, &a.rep), &one, &mb, &b.rep)
    } else { Vec::new() };
    Elt { v, rep }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

struct State<'c, 'a> {
    ctx: &'c Ctx<'a>,
    elts: Vec<Elt>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    rank_one: bool,
}

impl State<'_, '_> {
    /// Gebauer–Möller installation of the new element `h`.
    fn update(&mut self, h: usize) {
        let lh = lead(&self.elts[h]).clone();
        let cands: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.active[g] && lead(&self.elts[g]).comp == lh.comp)
            .map(|g| {
                let lg = &lead(&self.elts[g]).mono;
                (g, lh.mono.lcm(lg), self.rank_one && lh.mono.coprime(lg))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g, l, coprime)) in cands.iter().enumerate() {
            let dominated = cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(l)) || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *coprime || !dominated {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        let elts = &self.elts;
        self.pairs.retain(|p| {
            if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
                return true;
            }
            let li = lh.mono.lcm(&lead(&elts[p.i]).mono);
            let lj = lh.mono.lcm(&lead(&elts[p.j]).mono);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: h, comp: lh.comp, lcm: l });
            }
        }
        for g in 0..h {
            if self.active[g] {
                let lg = lead(&self.elts[g]);
                if lg.comp == lh.comp && lh.mono.divides(&lg.mono) {
                    self.active[g] = false;
                }
            }
        }
        self.active[h] = true;
    }

    fn basis(&self) -> Vec<&Elt> {
        self.elts.iter().zip(&self.active).filter(|(_, a)| **a).map(|(e, _)| e).collect()
    }

    fn insert(&mut self, f: Elt, track: bool) {
        let basis = self.basis();
        let r = reduce(self.ctx, f, &basis, track);
        if r.v.is_empty() {
            return;
        }
        let r = make_monic(self.ctx, r, track);
        self.elts.push(r);
        self.active.push(false);
        self.update(self.elts.len() - 1);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ctx = self.ctx;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ctx.to.cmp(ctx.mo, pa.comp, &pa.lcm, pb.comp, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the inputs, sorted by descending leading term,
/// every element monic.
pub(crate) fn groebner(ctx: &Ctx, inputs: Vec<Elt>, rank_one: bool, track: bool) -> Vec<Elt> {
    let mut st = State { ctx, elts: Vec::new(), active: Vec::new(), pairs: Vec::new(), rank_one };
    for f in inputs {
        st.insert(f, track);
    }
    while let Some(p) = st.next_pair() {
        let s = s_vector(ctx, &st.elts[p.i], &st.elts[p.j], track);
        st.insert(s, track);
    }
    let mut basis: Vec<Elt> = st.elts.into_iter().zip(st.active).filter(|(_, a)| *a).map(|(e, _)| e).collect();
    for k in 0..basis.len() {
        let f = basis[k].clone();
        let others: Vec<&Elt> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, e)| e).collect();
        let head = Elt { v: vec![f.v[0].clone()], rep: f.rep.clone() };
        let tail = reduce(ctx, Elt { v: f.v[1..].to_vec(), rep: Vec::new() }, &others, track);
        let mut v = head.v;
        v.extend(tail.v);
        let rep = if track { ctx.reps().add(&head.rep, &tail.rep) } else { Vec::new() };
        basis[k] = make_monic(ctx, Elt { v, rep }, track);
    }
    basis.sort_by(|a, b| ctx.cmp(lead(b), lead(a)));
    basis
}

/// Pairs `(i, j)`, `i < j`, of basis elements with equal leading component
/// whose lead syzygies generate all lead syzygies. For each `i` the
/// multipliers `lcm / lead_i` are kept only when minimal, which makes the
/// resulting syzygies a Gröbner basis for the induced Schreyer order.
pub(crate) fn minimal_pairs(basis: &[Elt]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..basis.len() {
        let li = lead(&basis[i]);
        let quots: Vec<(usize, Monomial)> = (i + 1..basis.len())
            .filter(|&j| lead(&basis[j]).comp == li.comp)
            .map(|j| (j, li.mono.quotient_of(&li.mono.lcm(&lead(&basis[j]).mono))))
            .collect();
        for (k, (j, q)) in quots.iter().enumerate() {
            let redundant = quots
                .iter()
                .enumerate()
                .any(|(k2, (_, q2))| k2 != k && q2.divides(q) && (q2 != q || k2 < k));
            if !redundant {
                out.push((i, *j));
            }
        }
    }
    out
}

