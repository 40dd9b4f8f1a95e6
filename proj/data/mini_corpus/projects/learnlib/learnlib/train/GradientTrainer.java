package learnlib.train;

import learnlib.model.NeuralModel;

public class GradientTrainer {
    private final double learningRate;
    private int epochs = 10;

    public GradientTrainer(double learningRate) {
        this.learningRate = learningRate;
    }

    public void fit(NeuralModel model) {
        for (int epoch = 0; epoch < epochs; epoch++) {
            double[] gradient = new double[16];
            gradient[0] = learningRate;
            model.updateWeights(gradient);
        }
    }
}
