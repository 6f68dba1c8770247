//! The A-model state space H_{W,G}: one sector per group element.

use exactalg::{rint, Monomial, Poly, RatMatrix, Rational};
use num_traits::{One, Zero};

use crate::error::{QsingError, Result};
use crate::milnor::MilnorRing;
use crate::singular::{check_nondegenerate, GroupElement, QSingularity, SymmetryGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub gamma: GroupElement,
    pub fixed_vars: Vec<usize>,
    pub w_gamma: Poly,
    pub milnor: MilnorRing,
    pub iota: Rational,
    /// Invariant monomial forms x^m ω_γ (in the fixed variables).
    pub invariants: Vec<Monomial>,
}

impl Sector {
    pub fn n_gamma(&self) -> usize {
        self.fixed_vars.len()
    }

    pub fn is_ramond(&self) -> bool {
        !self.fixed_vars.is_empty()
    }

    pub fn deg_w(&self) -> Rational {
        rint(self.n_gamma() as i64) + &self.iota * rint(2)
    }
}

pub fn build_sector(s: &QSingularity, g: &SymmetryGroup, gamma: &GroupElement) -> Result<Sector> {
    if !g.contains(gamma) {
        return Err(QsingError::ElementNotInGroup(gamma.to_string()));
    }
    let fixed = gamma.fixed_vars();
    let w_gamma = s.w.restrict(&fixed);
    let qf: Vec<Rational> = fixed.iter().map(|&i| s.q[i].clone()).collect();
    let milnor = MilnorRing::new(&w_gamma, &qf)
        .map_err(|e| QsingError::Internal(format!("restriction to the fixed locus of {gamma} is degenerate: {e}")))?;
    let iota = gamma.theta.iter().zip(&s.q).fold(Rational::zero(), |acc, (t, q)| acc + t - q);
    let invariants = invariant_basis(&fixed, &milnor, g);
    Ok(Sector { gamma: gamma.clone(), fixed_vars: fixed, w_gamma, milnor, iota, invariants })
}

/// x^m ω is invariant iff Σ_{fixed}(m_i+1)Θ_i^g ∈ Z for every generator g.
pub fn invariant_basis(fixed: &[usize], milnor: &MilnorRing, g: &SymmetryGroup) -> Vec<Monomial> {
    milnor
        .basis
        .iter()
        .filter(|m| {
            g.generators.iter().chain(std::iter::once(&g.j)).all(|h| {
                fixed
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (k, &i)| acc + rint(m.0[k] as i64 + 1) * &h.theta[i])
                    .is_integer()
            })
        })
        .cloned()
        .collect()
}

/// A basis class: sector index and invariant index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRef {
    pub sector: usize,
    pub inv: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub sing: QSingularity,
    pub group: SymmetryGroup,
    pub sectors: Vec<Sector>,
    pub classes: Vec<ClassRef>,
    pub eta: RatMatrix,
    pub unit: usize,
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn sector_of(&self, i: usize) -> &Sector {
        &self.sectors[self.classes[i].sector]
    }

    pub fn gamma(&self, i: usize) -> &GroupElement {
        &self.sector_of(i).gamma
    }

    pub fn deg_w(&self, i: usize) -> Rational {
        self.sector_of(i).deg_w()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        let c = self.classes[i];
        &self.sectors[c.sector].invariants[c.inv]
    }

    pub fn is_ramond(&self, i: usize) -> bool {
        self.sector_of(i).is_ramond()
    }

    pub fn sector_index(&self, gamma: &GroupElement) -> Option<usize> {
        self.sectors.iter().position(|s| &s.gamma == gamma)
    }

    /// Class index of x^m ω_γ; for NS sectors pass the empty monomial.
    pub fn find(&self, gamma: &GroupElement, m: &Monomial) -> Option<usize> {
        let si = self.sector_index(gamma)?;
        let inv = self.sectors[si].invariants.iter().position(|x| x == m)?;
        self.classes.iter().position(|c| c.sector == si && c.inv == inv)
    }

    /// Class e_γ of an NS sector.
    pub fn ns_class(&self, gamma: &GroupElement) -> Option<usize> {
        self.find(gamma, &Monomial(vec![]))
    }

    pub fn eta_inv(&self) -> RatMatrix {
        self.eta.inverse().expect("pairing is nondegenerate")
    }

    /// Human-readable label such as `e7` or `y^2*e0` for cyclic ⟨J⟩ groups, else the phase vector.
    pub fn label(&self, i: usize) -> String {
        let sec = self.sector_of(i);
        let m = self.monomial(i);
        let gname = match self.j_power(&sec.gamma) {
            Some(k) => format!("e{k}"),
            None => format!("e{}", sec.gamma),
        };
        if m.0.iter().all(|&e| e == 0) {
            gname
        } else {
            let vars: Vec<String> = sec.fixed_vars.iter().map(|&v| self.sing.vars[v].clone()).collect();
            format!("{}*{}", m.render(&vars), gname)
        }
    }

    /// k with γ = J^k, if any.
    pub fn j_power(&self, gamma: &GroupElement) -> Option<u64> {
        let j = &self.group.j;
        (0..j.order()).find(|&k| &j.pow(k as i64) == gamma)
    }
}

pub fn build_state_space(s: &QSingularity, g: &SymmetryGroup) -> Result<StateSpace> {
    if !g.contains(&g.j) || g.j != GroupElement::new(s.q.clone()) {
        return Err(QsingError::MissingJ);
    }
    let sectors: Vec<Sector> = g.elements.iter().map(|gamma| build_sector(s, g, gamma)).collect::<Result<_>>()?;
    let mut classes = Vec::new();
    for (si, sec) in sectors.iter().enumerate() {
        for inv in 0..sec.invariants.len() {
            classes.push(ClassRef { sector: si, inv });
        }
    }
    let n = classes.len();
    let mut eta = RatMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let (sa, sb) = (&sectors[classes[a].sector], &sectors[classes[b].sector]);
            if sa.gamma.inverse() != sb.gamma {
                continue;
            }
            eta.data[a][b] = if sa.is_ramond() {
                let ma = Poly::term(sa.invariants[classes[a].inv].clone(), Rational::one());
                let mb = Poly::term(sb.invariants[classes[b].inv].clone(), Rational::one());
                sa.milnor.residue_pairing(&ma, &mb)
            } else {
                Rational::one()
            };
        }
    }
    let jsec = sectors.iter().position(|x| x.gamma == g.j).ok_or(QsingError::MissingJ)?;
    let unit = classes.iter().position(|c| c.sector == jsec).ok_or(QsingError::MissingJ)?;
    let h = StateSpace { sing: s.clone(), group: g.clone(), sectors, classes, eta, unit };
    if h.eta.inverse().is_none() {
        return Err(QsingError::Internal("state-space pairing is degenerate".into()));
    }
    Ok(h)
}

/// State space of W₁ + W₂ in disjoint variables with the product group.
pub fn tensor_state_space(h1: &StateSpace, h2: &StateSpace) -> Result<StateSpace> {
    let (s1, s2) = (&h1.sing, &h2.sing);
    if let Some(v) = s1.vars.iter().find(|v| s2.vars.contains(v)) {
        return Err(QsingError::VariableCollision(v.clone()));
    }
    let (n1, n2) = (s1.nvars(), s2.nvars());
    let n = n1 + n2;
    let w = &s1.w.embed(n, &(0..n1).collect::<Vec<_>>()) + &s2.w.embed(n, &(n1..n).collect::<Vec<_>>());
    let mut vars = s1.vars.clone();
    vars.extend(s2.vars.iter().cloned());
    let s = check_nondegenerate(&w, vars)?;
    let pair = |a: &GroupElement, b: &GroupElement| {
        let mut t = a.theta.clone();
        t.extend(b.theta.iter().cloned());
        GroupElement::new(t)
    };
    let mut elements: Vec<GroupElement> =
        h1.group.elements.iter().flat_map(|a| h2.group.elements.iter().map(move |b| pair(a, b))).collect();
    elements.sort();
    let id1 = GroupElement::identity(n1);
    let id2 = GroupElement::identity(n2);
    let mut generators: Vec<GroupElement> = h1.group.generators.iter().map(|a| pair(a, &id2)).collect();
    generators.extend(h2.group.generators.iter().map(|b| pair(&id1, b)));
    let j = pair(&h1.group.j, &h2.group.j);
    let group = SymmetryGroup { contains_j: elements.binary_search(&j).is_ok(), elements, generators, j };
    build_state_space(&s, &group)
}
