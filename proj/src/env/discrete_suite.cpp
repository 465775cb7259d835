#include "porpi/env/discrete_suite.hpp"

namespace porpi::env {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::shared_ptr<exact::TabularPomdp> tiger(double accuracy, double discount) {
  const MatrixXd stay = MatrixXd::Identity(2, 2);
  const MatrixXd reset = MatrixXd::Constant(2, 2, 0.5);
  MatrixXd hear(2, 2);
  hear << accuracy, 1.0 - accuracy, 1.0 - accuracy, accuracy;
  MatrixXd rewards(2, 3);
  // states: tiger-left, tiger-right; actions: listen, open-left, open-right
  rewards << -1.0, -100.0, 10.0,
             -1.0, 10.0, -100.0;
  return std::make_shared<exact::TabularPomdp>("tiger", std::vector<MatrixXd>{stay, reset, reset},
                                               std::vector<MatrixXd>{hear, reset, reset}, rewards,
                                               VectorXd::Constant(2, 0.5), discount);
}

std::shared_ptr<exact::TabularPomdp> absorbing_toy(double r1, double r2, double discount) {
  const MatrixXd one = MatrixXd::Ones(1, 1);
  MatrixXd rewards(1, 2);
  rewards << r1, r2;
  return std::make_shared<exact::TabularPomdp>("absorbing", std::vector<MatrixXd>{one, one},
                                               std::vector<MatrixXd>{one, one}, rewards, VectorXd::Ones(1),
                                               discount);
}

std::shared_ptr<exact::TabularPomdp> deterministic_chain(int states, const VectorXd& rewards, int actions,
                                                         double discount) {
  if (states < 1 || actions < 1 || rewards.size() != states) throw DomainError("invalid chain parameters");
  MatrixXd advance = MatrixXd::Zero(states, states);
  for (int s = 0; s < states; ++s) advance(s, std::min(s + 1, states - 1)) = 1.0;
  const MatrixXd seen = MatrixXd::Identity(states, states);
  VectorXd b0 = VectorXd::Zero(states);
  b0(0) = 1.0;
  return std::make_shared<exact::TabularPomdp>(
      "chain", std::vector<MatrixXd>(static_cast<std::size_t>(actions), advance),
      std::vector<MatrixXd>(static_cast<std::size_t>(actions), seen), rewards.replicate(1, actions), b0, discount);
}

std::shared_ptr<exact::TabularPomdp> three_state(double discount) {
  MatrixXd drift(3, 3), jump(3, 3), sense(3, 2), rewards(3, 2);
  drift << 0.8, 0.2, 0.0,
           0.0, 0.8, 0.2,
           0.2, 0.0, 0.8;
  jump << 0.5, 0.5, 0.0,
          0.1, 0.8, 0.1,
          0.0, 0.5, 0.5;
  sense << 0.9, 0.1,
           0.5, 0.5,
           0.1, 0.9;
  rewards << 1.0, 0.0,
             0.0, 0.5,
             -1.0, 1.0;
  return std::make_shared<exact::TabularPomdp>("three-state", std::vector<MatrixXd>{drift, jump},
                                               std::vector<MatrixXd>{sense, sense}, rewards,
                                               VectorXd::Constant(3, 1.0 / 3.0), discount);
}

std::shared_ptr<exact::TabularPomdp> make_discrete_model(const std::string& id) {
  if (id == "tiger") return tiger();
  if (id == "absorbing") return absorbing_toy();
  if (id == "chain") return deterministic_chain(5, VectorXd::Ones(5));
  if (id == "three-state") return three_state();
  throw DomainError("unknown discrete model '" + id + "'");
}

std::vector<std::string> discrete_model_ids() { return {"tiger", "absorbing", "chain", "three-state"}; }

}  // namespace porpi::env
