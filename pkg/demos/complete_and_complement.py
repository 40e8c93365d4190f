"""Two frame-operator constructions: small-norm completion and the complement.

A Bessel system with small vectors can always be topped up to a Parseval
frame using vectors no larger than the originals: each deficient eigendirection
of the frame operator receives m equal copies with m chosen so the copies stay
under the norm budget.  And every Parseval frame has a complement whose Gram
is exactly the identity minus the original Gram.
"""

import numpy as np

import rieszforge as rf


def main():
    rng = np.random.default_rng(42)

    # a Bessel system of 5 small vectors in C^3
    delta = 0.2
    z = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
    z /= np.linalg.norm(z, axis=0, keepdims=True)
    z *= np.sqrt(rng.uniform(0.05, delta, size=5))
    vs = rf.VectorSystem(matrix=z, labels=tuple(range(5)))
    print(f"input: {vs.count} vectors in C^{vs.ambient_dim}, "
          f"squared norms <= {vs.norms_squared().max():.4f}")

    added = rf.complete_to_parseval_small(vs, delta)
    total = vs.frame_operator() + added.frame_operator()
    resid = np.abs(total - np.eye(3)).max()
    print(f"completion added {added.count} vectors "
          f"(squared norms <= {added.norms_squared().max():.4f})")
    print(f"frame operator vs identity: max residual {resid:.2e}")

    # a random Parseval frame of 7 vectors in C^3 and its complement
    q, _ = np.linalg.qr(rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7)))
    f = rf.VectorSystem(matrix=q[:3, :], labels=tuple(range(7)))
    g = rf.naimark_complement(f)
    print(f"\nParseval frame: 7 vectors in C^3, complement lives in C^{g.ambient_dim}")
    resid = np.abs(f.gram() + g.gram() - np.eye(7)).max()
    print(f"Gram(F) + Gram(G) vs identity: max residual {resid:.2e}")
    # the complement turns an upper bound on F into a lower bound on G
    lf = float(np.linalg.eigvalsh(f.gram())[-1])
    lg = float(np.linalg.eigvalsh(g.gram())[0])
    print(f"lambda_max(F Gram) = {lf:.6f},  lambda_min(G Gram) = {lg:.6f}, "
          f"sum = {lf + lg:.6f}")


if __name__ == "__main__":
    main()
