#!/usr/bin/env python3
"""
Simulador de Bolhas Periódicas - Linha de Comando
Orquestra os subcomandos (simulate, fixed-points, region-map, bifurcation,
bubbles, exponents, fit, table1, attractor) e grava os resultados em CSV ou
JSON.

Uso:
    python3 simular_bolhas.py simulate --b 0.5 --g -0.083 --x0 3 --z0 0.1 --t-end 600 --out saida/fig7.csv
    python3 simular_bolhas.py exponents gamma --b 1 --g-decades -2..-6 --format json --out gamma.json
"""

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

import registro
from bolhas import (bubble_stats, curva_ajuste, detect_bubbles, estimate_gamma,
                    estimate_nu, eventos_para_dataframe, fit_superexponential,
                    table1, verificar_atrator)
from config_simulacao import (SAIDA_CONFIG, SAIDA_IO, SAIDA_NUMERICA, SAIDA_OK,
                              SUBCOMANDOS, TABELA_1, carregar_configuracao)
from equilibrios import (bifurcation_scan, critical_lines, nontrivial_fixed_points,
                         region_label, rotular_ponto, trivial_fixed_points)
from exportador import (ResultEnvelope, caminho_auxiliar, escrever_csv,
                        escrever_json)
from integrador import IntegrationConfig, integrate, integrate_with_expansion
from modelo import ErroConfiguracao, ErroDominio, ErroSimulacao, ModelParams
from registro import log
from varredura import mapear

# flags cujo valor pode começar com '-' (ex.: --g-decades -2..-6)
FLAGS_FAIXA = ('--window', '--b-range', '--g-range', '--vary', '--g-decades', '--delta-decades')


@dataclass
class Resultado:
    tabela: Optional[pd.DataFrame]
    payload: Dict
    auxiliares: Dict[str, object] = field(default_factory=dict)
    falha_numerica: bool = False


class SimuladorBolhas:
    def __init__(self, config):
        self.config = config

    # -- utilidades -------------------------------------------------------

    def _parametros(self) -> ModelParams:
        if self.config.b is None or self.config.g is None:
            raise ErroConfiguracao(f"{self.config.subcomando} exige --b e --g")
        return ModelParams(self.config.b, self.config.g)

    def _config_integracao(self, t_end: Optional[float] = None) -> IntegrationConfig:
        c = self.config
        return IntegrationConfig(t_end=t_end or c.t_end, x0=c.x0, z0=c.z0, rtol=c.rtol, atol=c.atol, dt=c.dt)

    def _opcoes_ciclo(self) -> Dict:
        return {'rtol': self.config.rtol, 'atol': self.config.atol}

    # -- subcomandos ------------------------------------------------------

    def cmd_simulate(self) -> Resultado:
        params = self._parametros()
        config = self._config_integracao()
        log(f"Integrando b={params.b}, g={params.g} de ({config.x0}, {config.z0}) até t={config.t_end}")
        if self.config.expansao:
            traj = integrate_with_expansion(params, config)
        else:
            traj = integrate(params, config)

        payload = {
            'status': traj.status,
            't_final': traj.t_final,
            'ultimo_estado': list(traj.ultimo_estado),
            'eventos': [{'kind': e.kind, 't': e.t, 'valor': e.valor} for e in traj.eventos],
        }
        if traj.expansao is not None and traj.expansao.maximo_global is not None:
            maximo = traj.expansao.maximo_global
            payload['lambda_maximo'] = {'t': maximo.t, 'valor': maximo.valor}
        log(f"Status: {traj.status}; {len(traj.eventos)} eventos; t_final={traj.t_final:.4f}")
        return Resultado(traj.amostras, {**payload, 'amostras': traj.amostras}, {'events': payload})

    def cmd_fixed_points(self) -> Resultado:
        params = self._parametros()
        pontos = [(fp, True) for fp in trivial_fixed_points(params)]
        pontos += [(fp, False) for fp in nontrivial_fixed_points(params)]

        linhas = []
        for fp, trivial in pontos:
            l1, l2 = fp.eigenvalues
            linhas.append({
                'x_star': fp.location.x, 'z_star': fp.location.z, 'kind': fp.kind.value,
                'branch': fp.branch_index, 'trivial': trivial,
                'lambda1_re': l1.real, 'lambda1_im': l1.imag,
                'lambda2_re': l2.real, 'lambda2_im': l2.imag,
                'near_degenerate': fp.near_degenerate,
            })
        tabela = pd.DataFrame(linhas)

        payload = {
            'b': params.b, 'g': params.g,
            'pontos': tabela,
            'region': None, 'boundary': None, 'nearest': [],
        }
        if params.b > 0:
            regiao = region_label(params)
            payload.update(region=regiao.label, boundary=regiao.boundary, nearest=list(regiao.nearest),
                           census_label=regiao.census_label, inequality_label=regiao.inequality_label)
        return Resultado(tabela, payload, {'region': {k: v for k, v in payload.items() if k != 'pontos'}})

    def cmd_region_map(self) -> Resultado:
        c = self.config
        bs = np.linspace(c.b_range[0], c.b_range[1], c.resolution)
        gs = np.linspace(c.g_range[0], c.g_range[1], c.resolution)
        if bs.min() <= 0:
            raise ErroConfiguracao(f"b-range deve ser positivo (recebido {c.b_range})")
        tarefas = [{'b': float(b), 'g': float(g)} for b in bs for g in gs]
        log(f"Mapa de regiões: {len(tarefas)} pontos")
        linhas = mapear(rotular_ponto, tarefas, c.workers)
        tabela = pd.DataFrame([
            l if isinstance(l, dict) else {**t, 'region': 'erro'} for t, l in zip(tarefas, linhas)
        ], columns=['b', 'g', 'region'])

        curvas = critical_lines(b_max=max(2.0, float(bs.max()))).como_dataframe()
        dentro = curvas['b'].between(bs.min(), bs.max()) & curvas['g'].between(min(gs), max(gs))
        companheiro = curvas[dentro].reset_index(drop=True)

        contagem = tabela['region'].value_counts().to_dict()
        payload = {'b_range': list(c.b_range), 'g_range': list(c.g_range), 'resolution': c.resolution,
                   'contagem': contagem, 'mapa': tabela, 'linhas': companheiro}
        return Resultado(tabela, payload, {'lines': companheiro})

    def cmd_bifurcation(self) -> Resultado:
        c = self.config
        valor_fixo = c.b if c.fixed == 'b' else c.g
        if valor_fixo is None:
            raise ErroConfiguracao(f"bifurcation com --fixed {c.fixed} exige --{c.fixed}")
        faixa = c.vary or (c.g_range if c.fixed == 'b' else c.b_range)
        grade = np.linspace(faixa[0], faixa[1], c.resolution)
        log(f"Varredura de bifurcação: {c.fixed}={valor_fixo}, {len(grade)} pontos em {faixa}")
        ramo = bifurcation_scan((c.fixed, valor_fixo), grade)
        anotacoes = [{'nome': a.nome, 'valor': a.valor, 'tipo': a.tipo} for a in ramo.annotations]
        for a in ramo.annotations:
            log(f"  {a.nome} = {a.valor:.8f} ({a.tipo})")
        tabela = ramo.como_dataframe()
        payload = {'fixed': c.fixed, 'fixed_value': valor_fixo, 'varying': ramo.varying_parameter,
                   'anotacoes': anotacoes, 'ramos': tabela}
        return Resultado(tabela, payload, {'annotations': {'anotacoes': anotacoes}})

    def cmd_bubbles(self) -> Resultado:
        params = self._parametros()
        traj = integrate(params, self._config_integracao())
        if not traj.concluida:
            return Resultado(None, {'status': traj.status, 't_final': traj.t_final}, falha_numerica=True)
        eventos = detect_bubbles(traj, self.config.transient_cutoff)
        if self.config.window is not None:
            eventos = [e for e in eventos if self.config.window[0] <= e.t_peak <= self.config.window[1]]
        stats = bubble_stats(eventos, self.config.window)
        log(f"{stats.count} bolhas; período médio {np.mean(stats.periods) if stats.periods else math.nan:.4g}")
        tabela = eventos_para_dataframe(eventos)
        payload = {
            'b': params.b, 'g': params.g, 'status': traj.status,
            'eventos': [e.como_dict() for e in eventos],
            'stats': stats.como_dict(),
            'nota': '' if eventos else 'no limit cycle reached',
        }
        return Resultado(tabela, payload, {'stats': {'stats': payload['stats'], 'nota': payload['nota']}})

    def cmd_exponents(self) -> Resultado:
        c = self.config
        if c.quantidade is None:
            raise ErroConfiguracao("exponents exige 'nu' ou 'gamma'")
        if c.quantidade == 'nu':
            if c.g is None:
                raise ErroConfiguracao("exponents nu exige --g")
            grade = list(np.logspace(c.delta_decades[0], c.delta_decades[1], c.pontos))
            estimativa = estimate_nu(c.g, grade, workers=c.workers, x0=c.x0, z0=c.z0, **self._opcoes_ciclo())
        else:
            if c.b is None:
                raise ErroConfiguracao("exponents gamma exige --b")
            grade = list(-np.logspace(c.g_decades[0], c.g_decades[1], c.pontos))
            estimativa = estimate_gamma(c.b, grade, workers=c.workers, x0=c.x0, z0=c.z0, **self._opcoes_ciclo())
        log(f"{estimativa.nome} = {estimativa.valor:.4f} ± {estimativa.erro_padrao:.4f} "
            f"({estimativa.n_pontos} pontos)")
        payload = {**estimativa.como_dict(), 'tabela': estimativa.tabela}
        return Resultado(estimativa.tabela, payload, {'estimate': estimativa.como_dict()})

    def cmd_fit(self) -> Resultado:
        params = self._parametros()
        traj = integrate_with_expansion(params, self._config_integracao())
        if not traj.concluida:
            return Resultado(None, {'status': traj.status, 't_final': traj.t_final}, falha_numerica=True)
        ajuste = fit_superexponential(traj, self.config.peak_index, self.config.window_fraction,
                                      self.config.window)
        log(f"c1={ajuste.c1:.4f} c2={ajuste.c2:.4f} t_Λ={ajuste.t_lambda:.4f} "
            f"rms={ajuste.rms_log_residual:.4g}")
        curva = curva_ajuste(traj, ajuste)
        payload = {'b': params.b, 'g': params.g, 'fit': ajuste.como_dict(), 'curva': curva}
        return Resultado(curva, payload, {'fit': {'fit': ajuste.como_dict()}})

    def cmd_table1(self) -> Resultado:
        c = self.config
        b = c.b if c.b is not None else 1.0
        janela = c.window or (0.0, 100.0)
        valores_g = [linha['g'] for linha in TABELA_1]
        log(f"Reproduzindo a tabela de bolhas para b={b}, janela {janela}")
        tabela = table1(valores_g, b=b, janela=janela, workers=c.workers, x0=c.x0, z0=c.z0,
                        rtol=c.rtol, atol=c.atol)
        referencia = pd.DataFrame(TABELA_1).rename(columns={'N': 'N_ref', 'A': 'A_ref', 'w': 'w_ref'})
        tabela = tabela.merge(referencia, on='g', how='left')
        payload = {'b': b, 'janela': list(janela), 'linhas': tabela}
        return Resultado(tabela, payload)

    def cmd_attractor(self) -> Resultado:
        params = self._parametros()
        tabela, dispersao = verificar_atrator(params.b, params.g, self.config.condicoes,
                                              workers=self.config.workers, **self._opcoes_ciclo())
        log(f"Dispersão relativa máxima entre condições iniciais: {dispersao:.3g}")
        payload = {'b': params.b, 'g': params.g, 'condicoes': tabela, 'dispersao_maxima': dispersao}
        return Resultado(tabela, payload, {'attractor': {'dispersao_maxima': dispersao}})

    # -- execução ---------------------------------------------------------

    def executar(self) -> Resultado:
        metodo = getattr(self, 'cmd_' + self.config.subcomando.replace('-', '_'))
        return metodo()

    def gravar(self, resultado: Resultado):
        c = self.config
        config_ecoada = c.como_dict()
        if c.format == 'json':
            envelope = ResultEnvelope(c.subcomando, config_ecoada, resultado.payload, registro.historico())
            escrever_json(envelope.como_dict(), c.out)
            return
        if resultado.tabela is not None:
            escrever_csv(resultado.tabela, c.out)
        for nome, conteudo in resultado.auxiliares.items():
            if isinstance(conteudo, pd.DataFrame):
                escrever_csv(conteudo, caminho_auxiliar(c.out, f"{nome}.csv"))
            else:
                caminho = caminho_auxiliar(c.out, f"{nome}.json")
                if caminho is not None:
                    envelope = ResultEnvelope(c.subcomando, config_ecoada, conteudo, registro.historico())
                    escrever_json(envelope.como_dict(), caminho)


def _juntar_faixas(argv: List[str]) -> List[str]:
    """'--g-decades -2..-6' vira '--g-decades=-2..-6' para o argparse."""
    resultado, i = [], 0
    while i < len(argv):
        if argv[i] in FLAGS_FAIXA and i + 1 < len(argv):
            resultado.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            resultado.append(argv[i])
            i += 1
    return resultado


def criar_parser() -> argparse.ArgumentParser:
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument('--config', dest='arquivo_config', help='Arquivo JSON de configuração')
    comum.add_argument('--b', type=float)
    comum.add_argument('--g', type=float)
    comum.add_argument('--x0', type=float)
    comum.add_argument('--z0', type=float)
    comum.add_argument('--t-end', type=float)
    comum.add_argument('--rtol', type=float)
    comum.add_argument('--atol', type=float)
    comum.add_argument('--dt', type=float, help='Espaçamento da grade de saída')
    comum.add_argument('--out', help="Arquivo de saída ('-' = stdout)")
    comum.add_argument('--format', choices=('csv', 'json'))
    comum.add_argument('--workers', type=int, help='Processos paralelos (padrão: BUBBLECYCLE_WORKERS ou 1)')
    comum.add_argument('--window', help="Janela de tempo 'inicio..fim'")
    comum.add_argument('--transient-cutoff', help="'auto', 'nenhum' ou tempo de corte")
    comum.add_argument('--lambda', dest='expansao', action='store_true', default=None,
                       help='Integra também o expoente de expansão Λ')
    comum.add_argument('--peak-index', type=int)
    comum.add_argument('--window-fraction', type=float)
    comum.add_argument('--b-range')
    comum.add_argument('--g-range')
    comum.add_argument('--resolution', type=int)
    comum.add_argument('--fixed', choices=('b', 'g'))
    comum.add_argument('--vary', help="Faixa do parâmetro variado 'inicio..fim'")
    comum.add_argument('--g-decades', help="Décadas de |g| 'a..b' (ex.: -2..-6)")
    comum.add_argument('--delta-decades', help="Décadas de Δ 'a..b' (ex.: -4..-2)")
    comum.add_argument('--pontos', type=int, help='Pontos da grade dos expoentes')
    comum.add_argument('--condicoes', help="Condições iniciais 'x0,z0;x0,z0;...'")

    parser = argparse.ArgumentParser(description='Simulador de Bolhas Periódicas')
    sub = parser.add_subparsers(dest='subcomando', required=True)
    for nome in SUBCOMANDOS:
        p = sub.add_parser(nome, parents=[comum])
        if nome == 'exponents':
            p.add_argument('quantidade', choices=('nu', 'gamma'))
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Função principal: devolve o código de saída."""
    argumentos = vars(criar_parser().parse_args(_juntar_faixas(list(sys.argv[1:] if argv is None else argv))))
    arquivo_config = argumentos.pop('arquivo_config', None)

    if argumentos.get('out') in (None, '-'):
        registro.definir_silencioso(True)

    try:
        config = carregar_configuracao(argumentos, arquivo_config)
    except ErroConfiguracao as e:
        log(str(e), "ERRO")
        print(f"Erro de configuração: {e}", file=sys.stderr)
        return SAIDA_CONFIG
    except OSError as e:
        print(f"Erro ao ler configuração: {e}", file=sys.stderr)
        return SAIDA_IO

    simulador = SimuladorBolhas(config)
    try:
        resultado = simulador.executar()
    except (ErroConfiguracao, ErroDominio) as e:
        log(str(e), "ERRO")
        print(f"Erro de configuração: {e}", file=sys.stderr)
        return SAIDA_CONFIG
    except ErroSimulacao as e:
        log(str(e), "ERRO")
        print(f"Falha numérica: {e}", file=sys.stderr)
        return SAIDA_NUMERICA

    try:
        simulador.gravar(resultado)
    except OSError as e:
        print(f"Erro de escrita: {e}", file=sys.stderr)
        return SAIDA_IO

    if resultado.falha_numerica:
        print(f"Falha numérica: status {resultado.payload.get('status')}", file=sys.stderr)
        return SAIDA_NUMERICA
    return SAIDA_OK


if __name__ == "__main__":
    sys.exit(main())
