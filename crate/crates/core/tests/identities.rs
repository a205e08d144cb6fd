use bincx_core::constructions::*;
use bincx_core::randgen::{GenConfig, Generator};
use bincx_core::{binary_torsion, BinaryComplex, FieldDesc, TorsionValue};

fn fields() -> [FieldDesc; 2] {
    [FieldDesc::Rationals, FieldDesc::Prime(101)]
}

fn t(p: &BinaryComplex) -> TorsionValue {
    binary_torsion(p)
}

fn sign(f: FieldDesc, n: usize) -> TorsionValue {
    TorsionValue::new(f.from_i64(if n % 2 == 0 { 1 } else { -1 })).unwrap()
}

#[test]
fn shortening_inverse() {
    for f in fields() {
        for seed in 0..60 {
            let k = 2 + seed as usize % 3;
            let p = Generator::new(GenConfig::new(seed, f).with_length(k + 1)).gen_binary();
            let s = grayson_shorten(&p).unwrap();
            assert_eq!(s.top_degree(), k.max(2));
            assert!((t(&p) * t(&s) * t(&tau_of(&p).unwrap())).is_one(), "seed {seed} {f}");
        }
    }
}

#[test]
fn truncation() {
    for f in fields() {
        for seed in 0..60 {
            let p = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 3)).gen_binary();
            let lhs = t(&grayson_shorten(&p).unwrap());
            let rhs = t(&truncate_ge1(&p).unwrap()) * t(&truncate_le2(&p).unwrap()).inv() * t(&tau_of(&p).unwrap()).inv();
            assert_eq!(lhs, rhs, "seed {seed} {f}");
        }
    }
}

#[test]
fn ladder_relation_and_total() {
    for f in fields() {
        for seed in 0..60 {
            let l = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 4)).gen_ladder();
            let mut prod = TorsionValue::one(f);
            for i in 0..l.sigma.len() {
                let g = t(&BinaryComplex::two_term(&l.sigma[i], &l.tau[i]).unwrap());
                prod = prod * g.pow(if i % 2 == 0 { 1 } else { -1 });
            }
            let lhs = t(&l.target) * t(&l.source).inv();
            assert_eq!(lhs, prod, "seed {seed} {f}");
            assert_eq!(t(&ladder_total(&l).unwrap()), prod, "total seed {seed} {f}");
        }
    }
}

#[test]
fn shortened_ladder() {
    for f in fields() {
        for seed in 0..40 {
            let l = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 3)).gen_ladder();
            let s = shorten_ladder(&l).unwrap();
            assert!(s.is_valid() && s.is_involutive());
            let prod = |l: &bincx_core::BinaryLadder| {
                let mut prod = TorsionValue::one(f);
                for i in 0..l.sigma.len() {
                    let g = t(&BinaryComplex::two_term(&l.sigma[i], &l.tau[i]).unwrap());
                    prod = prod * g.pow(if i % 2 == 0 { 1 } else { -1 });
                }
                prod
            };
            assert_eq!(prod(&s), prod(&l).inv(), "seed {seed} {f}");
        }
    }
}

#[test]
fn ses_multiplicative() {
    for f in fields() {
        for seed in 0..40 {
            let s = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 3)).gen_ses(false);
            assert_eq!(t(&s.total), t(&s.sub) * t(&s.quot));
            let o = ses_shorten(&s).unwrap();
            assert_eq!(t(&o.total), t(&o.sub) * t(&o.quot), "seed {seed} {f}");
        }
    }
}

#[test]
fn nenashev_and_decomposition() {
    for f in fields() {
        for seed in 0..40 {
            let d = Generator::new(GenConfig::new(seed, f)).gen_nenashev();
            let r = remark_objects(&d).unwrap();
            let [c0, c1, c2] = &r.columns;
            let lhs = t(&d.p) * t(&d.n).inv() * t(&d.m);
            assert_eq!(lhs, t(c0) * t(c1).inv() * t(c2), "nenashev seed {seed} {f}");
            let total = nenashev_total(&d).unwrap();
            assert_eq!(t(&total), lhs, "total seed {seed} {f}");
            assert_eq!(t(&r.t_b), t(&d.p) * sign(f, d.p.dim(2)), "t_b seed {seed} {f}");
            assert_eq!(t(&r.t_f), t(&d.m) * sign(f, d.m.dim(0)), "t_f seed {seed} {f}");
            assert_eq!(t(&r.t_bf), t(&d.n).inv() * sign(f, d.n.dim(0) + d.n.dim(2)), "t_bf seed {seed} {f}");
            assert_eq!(t(&r.t_prime), t(&r.t_b) * t(&r.t_bf) * t(&r.t_f), "t_prime seed {seed} {f}");
        }
    }
}

#[test]
fn truncation_special_cases() {
    for f in fields() {
        for seed in 0..30 {
            let mut g = Generator::new(GenConfig::new(seed, f).with_length(2 + seed as usize % 3));
            let c = g.gen_acyclic();
            let p = BinaryComplex::diagonal_of(&c).unwrap();
            assert!(t(&truncate_ge1(&p).unwrap()).is_one());
            assert!(t(&truncate_le2(&p).unwrap()).is_one());
            assert_eq!(t(&grayson_shorten(&p).unwrap()), t(&tau_of(&p).unwrap()).inv());

            let mut ranks = g.ranks(3);
            ranks[0] = 0;
            let p = g.gen_binary_with_ranks(&ranks);
            assert_eq!(p.dim(0), 0);
            assert!(t(&truncate_le2(&p).unwrap()).is_one(), "seed {seed} {f}");
        }
    }
}

#[test]
fn tau_parities() {
    for f in fields() {
        for seed in 0..30 {
            let d = Generator::new(GenConfig::new(seed, f)).gen_nenashev();
            let tau = |n: usize| t(&BinaryComplex::tau_swap(f, n));
            assert_eq!(tau(d.n.dim(0)) * tau(d.n.dim(2)), tau(d.n.dim(1)));
            assert_eq!(tau(d.n.dim(1)), tau(d.p.dim(1)) * tau(d.m.dim(1)));
        }
    }
}
