"""Print the renewable-multiple interpretation sweep and the tax blow-up table."""

from ces_transition import experiments


def main():
    report = experiments.claims_report()
    block = report["re_multiple_claim"]
    print(f"{'init_mode':18} {'elast':6} {'target':6} {'sigma':>6} {'share_F(T)':>10} {'R(T)/R0':>10} {'vs 13x':>8}")
    for i in block["interpretations"]:
        print(
            f"{i['init_mode']:18} {i['elasticity_reading']:6} {i['target_reading']:6} {i['sigma']:6.3f} "
            f"{i['final_share_F']:10.4f} {i['re_multiple']:10.4f} {i['deviation_from_claim']:+8.1%}"
        )
    taxes = report["tax_ratio_claim"]
    print(f"\n{'alpha':>5} {'sigma':>5} {'zeta':>6} {'max C/cF':>12} {'before 50%':>11} {'p_F blow-up':>12}")
    for p in taxes["points"]:
        print(
            f"{p['alpha']:5.2f} {p['sigma']:5.2f} {p['re_cost_decline']:6.3f} {p['max_tax_ratio']:12.4g} "
            f"{p['max_tax_ratio_before_half']:11.4g} {p['fossil_price_blowup']:12.4g}"
        )


if __name__ == "__main__":
    main()
