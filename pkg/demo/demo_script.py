import httpx

API = "http://localhost:8000"


def main() -> None:
    with httpx.Client(base_url=API) as client:
        print(client.get("/constants").json())

        th = client.get("/thresholds", params={"P": 3}).json()
        print({k: th[k] for k in ("mu1", "mu2", "mu3minus", "mu3plus", "mu4")})

        for mu in (0.0, 0.5, 0.9, 0.96, 1.0):
            r = client.get("/phi", params={"P": 3, "mu": mu, "oracle": True}).json()
            print(f"mu={mu:<5} Phi={r['value']:.9f} oracle={r['oracle']:.9f} {r['branch']}")

        omega = client.get("/region", params={"set": "omega", "p": 0.5, "samples": 64}).json()
        print(f"Omega_0.5 boundary: {len(omega['points'])} points")

        ext = client.get("/extremal", params={"p": 0.5, "zeta_re": 1.0, "order": 4}).json()
        print(f"lambda1={ext['lambda1']} hankel={ext['hankel']}")

        bad = client.get("/phi", params={"P": 3, "p": 0.5, "mu": 1})
        print(f"both poles given -> {bad.status_code}")


if __name__ == "__main__":
    main()
